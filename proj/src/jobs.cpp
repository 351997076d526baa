#include "fell/jobs.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <initializer_list>
#include <set>

namespace fell {

namespace {

double round12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!j.is_object()) throw InputError(where + ": expected a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            if (it.key() == a) {
                ok = true;
                break;
            }
        if (!ok) throw InputError(where + ": unknown key '" + it.key() + "'");
    }
}

std::vector<std::string> split_top_level(const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '[') ++depth;
        if (c == ']') --depth;
        if (c == ',' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

int parse_positive_int(const std::string& s, const std::string& what) {
    try {
        const long v = std::stol(s);
        if (v < 1) throw InputError(what + " must be positive");
        return static_cast<int>(v);
    } catch (const std::logic_error&) {
        throw InputError("cannot parse " + what + " from '" + s + "'");
    }
}

int parse_index(const std::string& s, const std::string& what) {
    try {
        const long v = std::stol(s);
        if (v < 0) throw InputError(what + " must be nonnegative");
        return static_cast<int>(v);
    } catch (const std::logic_error&) {
        throw InputError("cannot parse " + what + " from '" + s + "'");
    }
}

GroupPtr parse_group_name(const std::string& name) {
    if (name.rfind("cyclic:", 0) == 0)
        return make_cyclic(parse_positive_int(name.substr(7), "cyclic order"));
    if (name.rfind("product:", 0) == 0) {
        std::string body = name.substr(8);
        if (body.size() < 2 || body.front() != '[' || body.back() != ']')
            throw InputError("group: product expects product:[a,b,...]");
        body = body.substr(1, body.size() - 2);
        GroupPtr acc;
        for (const auto& part : split_top_level(body)) {
            auto g = parse_group_name(part);
            acc = acc ? direct_product(*acc, *g) : g;
        }
        if (!acc) throw InputError("group: empty product");
        return acc;
    }
    if (name.rfind("free_abelian:", 0) == 0)
        throw CapacityError("group: free abelian groups only support lazy evaluation "
                            "(demo-qtorus, or verify-axioms with theta)");
    throw InputError("group: unknown name '" + name + "'");
}

std::optional<int> free_abelian_rank(const json& spec) {
    if (spec.is_string()) {
        const auto s = spec.get<std::string>();
        if (s.rfind("free_abelian:", 0) == 0)
            return parse_positive_int(s.substr(13), "free abelian rank");
    }
    return std::nullopt;
}

CMatrix parse_matrix(const json& spec, const std::string& where) {
    if (!spec.is_array() || spec.empty()) throw InputError(where + ": expected a matrix");
    const std::size_t rows = spec.size();
    const std::size_t cols = spec[0].size();
    CMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!spec[i].is_array() || spec[i].size() != cols)
            throw InputError(where + ": ragged matrix");
        for (std::size_t j = 0; j < cols; ++j) {
            const auto& e = spec[i][j];
            if (!e.is_array() || e.size() != 2)
                throw InputError(where + ": entries must be [re, im] pairs");
            m.at(i, j) = cplx(e[0].get<double>(), e[1].get<double>());
        }
    }
    return m;
}

json matrix_to_json(const CMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back({round12(m.at(i, j).real()), round12(m.at(i, j).imag())});
        rows.push_back(std::move(row));
    }
    return rows;
}

AlgebraElement parse_algebra_element(const json& spec, const AlgebraPtr& algebra,
                                     const std::string& where) {
    if (!spec.is_array() || static_cast<int>(spec.size()) != algebra->blocks())
        throw InputError(where + ": expected one matrix per block");
    AlgebraElement a{algebra, {}};
    for (int i = 0; i < algebra->blocks(); ++i) {
        auto m = parse_matrix(spec[static_cast<std::size_t>(i)], where);
        if (static_cast<int>(m.rows()) != algebra->size(i) ||
            static_cast<int>(m.cols()) != algebra->size(i))
            throw InputError(where + ": block shape mismatch");
        a.blocks.push_back(std::move(m));
    }
    return a;
}

std::vector<int> parse_tuple_key(const std::string& key, int degree, int order,
                                 const std::string& where) {
    std::vector<int> tuple;
    std::string cur;
    for (char c : key + ",") {
        if (c == ',') {
            if (cur.empty()) throw InputError(where + ": bad tuple key '" + key + "'");
            const int g = parse_index(cur, "tuple entry");
            if (g >= order) throw InputError(where + ": element index out of range");
            tuple.push_back(g);
            cur.clear();
        } else if (c == ' ') {
            continue;
        } else {
            cur += c;
        }
    }
    if (static_cast<int>(tuple.size()) != degree)
        throw InputError(where + ": tuple '" + key + "' has wrong length");
    return tuple;
}

BlockPermutation parse_permutation(const json& spec, int k, const std::string& where) {
    if (!spec.is_array() || static_cast<int>(spec.size()) != k)
        throw InputError(where + ": expected a permutation array of length " + std::to_string(k));
    std::vector<int> v;
    for (const auto& e : spec) v.push_back(e.get<int>());
    return BlockPermutation(std::move(v));
}

} // namespace

GroupPtr parse_group(const json& spec) {
    if (spec.is_array()) {
        std::vector<std::vector<int>> table;
        for (const auto& row : spec) {
            std::vector<int> r;
            for (const auto& e : row) r.push_back(e.get<int>());
            table.push_back(std::move(r));
        }
        return std::make_shared<FiniteGroup>(std::move(table));
    }
    if (spec.is_string()) return parse_group_name(spec.get<std::string>());
    throw InputError("group: expected a name string or an explicit Cayley table");
}

AlgebraPtr parse_algebra(const json& spec) {
    check_keys(spec, {"blocks"}, "algebra");
    if (!spec.contains("blocks")) throw InputError("algebra: missing 'blocks'");
    std::vector<int> sizes;
    for (const auto& e : spec.at("blocks")) sizes.push_back(e.get<int>());
    return std::make_shared<BlockAlgebra>(std::move(sizes));
}

PicardHom parse_psi(const json& spec, const GroupPtr& group, const AlgebraPtr& algebra) {
    const int n = group->order();
    const int k = algebra->blocks();
    std::vector<BlockPermutation> perms(static_cast<std::size_t>(n), BlockPermutation::id(k));
    if (spec.is_array()) {
        if (static_cast<int>(spec.size()) != n)
            throw InputError("psi: expected one permutation per group element");
        for (int g = 0; g < n; ++g)
            perms[static_cast<std::size_t>(g)] =
                parse_permutation(spec[static_cast<std::size_t>(g)], k, "psi");
    } else if (spec.is_object()) {
        for (auto it = spec.begin(); it != spec.end(); ++it) {
            const int g = parse_index(it.key(), "psi key");
            if (g >= n) throw InputError("psi: element index out of range");
            perms[static_cast<std::size_t>(g)] = parse_permutation(it.value(), k, "psi");
        }
    } else {
        throw InputError("psi: expected an array or an object keyed by element index");
    }
    return PicardHom(group, algebra, std::move(perms));
}

Cochain parse_cochain(const json& spec, const GroupPtr& group, int k) {
    check_keys(spec, {"degree", "values"}, "cochain");
    if (!spec.contains("degree")) throw InputError("cochain: missing 'degree'");
    const int degree = spec.at("degree").get<int>();
    Cochain c(group, k, degree);
    if (!spec.contains("values")) return c;
    const auto& values = spec.at("values");
    if (!values.is_object()) throw InputError("cochain: 'values' must be an object");
    for (auto it = values.begin(); it != values.end(); ++it) {
        const auto tuple = parse_tuple_key(it.key(), degree, group->order(), "cochain");
        if (!it.value().is_array() || static_cast<int>(it.value().size()) != k)
            throw InputError("cochain: each value must be an array of " + std::to_string(k) +
                             " angle strings");
        AngleVec v(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) {
            const auto& entry = it.value()[static_cast<std::size_t>(i)];
            if (!entry.is_string()) throw InputError("cochain: angles are 'p/q' strings");
            v[static_cast<std::size_t>(i)] = Angle::parse(entry.get<std::string>());
        }
        c.set(tuple, std::move(v));  // rejects nonzero values at identity tuples
    }
    return c;
}

TwistedAction parse_twisted_action(const json& spec, const GroupPtr& group,
                                   const AlgebraPtr& algebra, double tol) {
    check_keys(spec, {"S", "omega"}, "twisted_action");
    if (!spec.contains("S")) throw InputError("twisted_action: missing 'S'");
    const int n = group->order();
    TwistedAction ta;
    ta.group = group;
    ta.algebra = algebra;
    ta.s.assign(static_cast<std::size_t>(n), AlgebraAutomorphism::id(algebra));

    const auto& s_spec = spec.at("S");
    if (!s_spec.is_object()) throw InputError("twisted_action: 'S' must map element index to data");
    std::set<int> covered;
    for (auto it = s_spec.begin(); it != s_spec.end(); ++it) {
        const int g = parse_index(it.key(), "S key");
        if (g >= n) throw InputError("twisted_action: S index out of range");
        check_keys(it.value(), {"perm", "unitaries"}, "twisted_action.S");
        AlgebraAutomorphism a{algebra, parse_permutation(it.value().at("perm"), algebra->blocks(),
                                                         "twisted_action.S.perm"),
                              {}};
        const auto& us = it.value().at("unitaries");
        if (!us.is_array() || static_cast<int>(us.size()) != algebra->blocks())
            throw InputError("twisted_action: one unitary per block required");
        for (const auto& u : us) a.unitaries.push_back(parse_matrix(u, "twisted_action.S.unitaries"));
        a.validate(tol);
        ta.s[static_cast<std::size_t>(g)] = std::move(a);
        covered.insert(g);
    }
    for (int g = 0; g < n; ++g)
        if (!covered.count(g) && g != FiniteGroup::identity)
            throw InputError("twisted_action: S must cover every non-identity element");

    ta.omega.assign(static_cast<std::size_t>(n),
                    std::vector<AlgebraElement>(static_cast<std::size_t>(n), identity(algebra)));
    if (spec.contains("omega")) {
        const auto& w_spec = spec.at("omega");
        if (!w_spec.is_object()) throw InputError("twisted_action: 'omega' must map 'g,h' to matrices");
        for (auto it = w_spec.begin(); it != w_spec.end(); ++it) {
            const auto pair = parse_tuple_key(it.key(), 2, n, "twisted_action.omega");
            ta.omega[static_cast<std::size_t>(pair[0])][static_cast<std::size_t>(pair[1])] =
                parse_algebra_element(it.value(), algebra, "twisted_action.omega");
        }
    }
    return ta;
}

std::vector<std::vector<Angle>> parse_theta(const json& spec) {
    if (!spec.is_array() || spec.empty()) throw InputError("theta: expected a square matrix");
    std::vector<std::vector<Angle>> theta;
    for (const auto& row : spec) {
        std::vector<Angle> r;
        for (const auto& e : row) {
            if (!e.is_string()) throw InputError("theta: entries are 'p/q' strings");
            r.push_back(Angle::parse(e.get<std::string>()));
        }
        theta.push_back(std::move(r));
    }
    return theta;
}

json cochain_to_json(const Cochain& c) {
    json values = json::object();
    for (std::size_t i = 0; i < c.tuples(); ++i) {
        const auto& v = c.entry(i);
        if (all_zero(v)) continue;
        const auto tuple = c.tuple_at(i);
        std::string key;
        for (std::size_t j = 0; j < tuple.size(); ++j) {
            if (j) key += ",";
            key += std::to_string(tuple[j]);
        }
        json arr = json::array();
        for (const auto& a : v) arr.push_back(a.str());
        values[key] = std::move(arr);
    }
    return json{{"degree", c.degree()}, {"values", std::move(values)}};
}

json psi_to_json(const PicardHom& psi) {
    json out = json::object();
    for (int g = 0; g < psi.group()->order(); ++g)
        out[std::to_string(g)] = psi.sigma(g).images();
    return out;
}

json factor_system_to_json(const FactorSystem& fs) {
    return json{{"psi", psi_to_json(fs.picard())}, {"omega", cochain_to_json(fs.twist())}};
}

json axiom_report_to_json(const AxiomReport& rep) {
    json axioms = json::object();
    for (const auto& [name, r] : rep.checks) {
        json entry{{"pass", r.pass}, {"max_residual", round12(r.max_residual)}};
        if (r.pass || r.witness.empty())
            entry["witness"] = nullptr;
        else
            entry["witness"] = r.witness;
        axioms[name] = std::move(entry);
    }
    return json{{"axioms", std::move(axioms)}, {"all_pass", rep.all_pass()}};
}

json algebra_element_to_json(const AlgebraElement& a) {
    json out = json::array();
    for (const auto& b : a.blocks) out.push_back(matrix_to_json(b));
    return out;
}

json bimodule_element_to_json(const BimoduleElement& x) {
    json out = json::array();
    for (const auto& b : x.blocks) out.push_back(matrix_to_json(b));
    return out;
}

json twisted_action_to_json(const TwistedAction& ta) {
    json s = json::object();
    for (int g = 0; g < ta.group->order(); ++g) {
        json unitaries = json::array();
        for (const auto& u : ta.S(g).unitaries) unitaries.push_back(matrix_to_json(u));
        s[std::to_string(g)] = json{{"perm", ta.S(g).perm.images()}, {"unitaries", std::move(unitaries)}};
    }
    json w = json::object();
    for (int g = 0; g < ta.group->order(); ++g)
        for (int h = 0; h < ta.group->order(); ++h)
            w[std::to_string(g) + "," + std::to_string(h)] = algebra_element_to_json(ta.w(g, h));
    return json{{"S", std::move(s)}, {"omega", std::move(w)}};
}

JobConfig parse_config(const std::string& text) {
    JobConfig cfg;
    try {
        cfg.doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("config: ") + e.what());
    }
    if (!cfg.doc.is_object()) throw InputError("config: top level must be a JSON object");
    if (cfg.doc.contains("modulus")) cfg.modulus = cfg.doc.at("modulus").get<std::int64_t>();
    if (cfg.doc.contains("samples")) cfg.samples = cfg.doc.at("samples").get<int>();
    if (cfg.doc.contains("seed")) cfg.seed = cfg.doc.at("seed").get<std::uint64_t>();
    if (cfg.doc.contains("tol")) cfg.tol = cfg.doc.at("tol").get<double>();
    if (cfg.doc.contains("window")) cfg.window = cfg.doc.at("window").get<int>();
    if (cfg.modulus < 0) throw InputError("config: modulus must be positive");
    if (cfg.samples < 1) throw InputError("config: samples must be positive");
    if (cfg.tol <= 0) throw InputError("config: tol must be positive");
    if (cfg.window < 1) throw InputError("config: window must be positive");
    return cfg;
}

std::string emit_report(const json& report) { return report.dump(2) + "\n"; }

namespace {

constexpr const char* kModulusCaveat =
    "classes are mu_m-valued cocycle representatives modulo T-valued coboundaries; "
    "completeness for full T coefficients rests on the |G|-torsion of H^p(G,T)";

constexpr const char* kActionCaveat =
    "nontrivial permutation action: exhaustiveness of mu_m-valued representatives "
    "is a working assumption validated only on small cases";

struct Parsed {
    GroupPtr group;
    AlgebraPtr algebra;
};

Parsed parse_base(const JobConfig& cfg) {
    if (!cfg.doc.contains("group")) throw InputError("config: missing 'group'");
    if (!cfg.doc.contains("algebra")) throw InputError("config: missing 'algebra'");
    Parsed p;
    p.group = parse_group(cfg.doc.at("group"));
    p.algebra = parse_algebra(cfg.doc.at("algebra"));
    return p;
}

PicardHom psi_or_trivial(const JobConfig& cfg, const Parsed& base) {
    if (cfg.doc.contains("psi")) return parse_psi(cfg.doc.at("psi"), base.group, base.algebra);
    return PicardHom::trivial(base.group, base.algebra);
}

std::int64_t modulus_or_default(const JobConfig& cfg, const GroupPtr& group) {
    return cfg.modulus > 0 ? cfg.modulus : group->order();
}

json group_echo(const GroupPtr& group) { return json{{"order", group->order()}}; }

JobResult job_cohomology(const JobConfig& cfg) {
    const auto base = parse_base(cfg);
    const auto psi = psi_or_trivial(cfg, base);
    const auto action = psi.action();
    const auto m = modulus_or_default(cfg, base.group);
    const auto classes = h2_classes(base.group, action, m);

    json reps = json::array();
    for (const auto& c : classes) reps.push_back(cochain_to_json(c));
    json report{{"command", "cohomology"},
                {"group", group_echo(base.group)},
                {"modulus", m},
                {"class_count", classes.size()},
                {"representatives", std::move(reps)},
                {"action_nontrivial", !action.is_trivial()},
                {"caveat", kModulusCaveat}};
    if (!action.is_trivial()) report["action_caveat"] = kActionCaveat;

    int exit_code = 0;
    if (cfg.oracle) {
        const auto oracle = brute_force_classes(base.group, action, 2, m);
        const bool agree = oracle.size() == classes.size();
        report["oracle"] = json{{"class_count", oracle.size()}, {"agrees", agree}};
        if (!agree) exit_code = 1;
    }
    return {exit_code, std::move(report)};
}

JobResult job_verify_fs(const JobConfig& cfg) {
    const auto base = parse_base(cfg);
    const auto psi = psi_or_trivial(cfg, base);
    if (!cfg.doc.contains("lambda")) throw InputError("verify-fs: missing 'lambda'");
    const auto lambda = parse_cochain(cfg.doc.at("lambda"), base.group, psi.k());
    const PreFactorSystem pre(psi, lambda);
    const bool ok = is_factor_system(pre, 2, cfg.seed, cfg.tol);
    json report{{"command", "verify-fs"}, {"is_factor_system", ok}};
    return {ok ? 0 : 1, std::move(report)};
}

json fibers_to_json(const FellBundle& bundle) {
    json fibers = json::object();
    for (int g = 0; g < bundle.group()->order(); ++g)
        fibers[std::to_string(g)] = json{{"perm", bundle.sigma(g).images()},
                                         {"dim", bimodule_dim(*bundle.algebra(), bundle.sigma(g))}};
    return fibers;
}

JobResult job_build(const JobConfig& cfg) {
    const auto base = parse_base(cfg);
    const auto psi = psi_or_trivial(cfg, base);
    Cochain twist = cfg.doc.contains("omega")
                        ? parse_cochain(cfg.doc.at("omega"), base.group, psi.k())
                        : Cochain(base.group, psi.k(), 2);
    const FactorSystem fs(psi, std::move(twist));  // throws InputError if not a cocycle
    const auto bundle = FellBundle::from_factor_system(fs);
    json report{{"command", "build"},
                {"group", group_echo(base.group)},
                {"unit_fiber_blocks", base.algebra->sizes()},
                {"fibers", fibers_to_json(bundle)},
                {"factor_system", factor_system_to_json(fs)}};
    return {0, std::move(report)};
}

JobResult job_verify_axioms(const JobConfig& cfg) {
    // lazy route: free abelian group with a theta matrix
    if (cfg.doc.contains("group")) {
        if (const auto rank = free_abelian_rank(cfg.doc.at("group"))) {
            if (!cfg.doc.contains("theta"))
                throw InputError("verify-axioms: free abelian groups need 'theta'");
            const LazyBundle bundle(lazy_system(*rank, parse_theta(cfg.doc.at("theta"))));
            const auto rep = verify_axioms_lazy(bundle, cfg.window, cfg.samples, cfg.seed, cfg.tol);
            json report = axiom_report_to_json(rep);
            report["command"] = "verify-axioms";
            report["group"] = json{{"free_abelian", *rank}};
            report["window"] = cfg.window;
            return {rep.all_pass() ? 0 : 1, std::move(report)};
        }
    }
    const auto base = parse_base(cfg);
    if (cfg.doc.contains("twisted_action") && (cfg.doc.contains("omega") || cfg.doc.contains("psi")))
        throw InputError("verify-axioms: give either psi/omega or twisted_action, not both");
    FellBundle bundle = [&] {
        if (cfg.doc.contains("twisted_action"))
            return FellBundle::from_twisted_action(
                parse_twisted_action(cfg.doc.at("twisted_action"), base.group, base.algebra, cfg.tol),
                cfg.tol);
        const auto psi = psi_or_trivial(cfg, base);
        Cochain twist = cfg.doc.contains("omega")
                            ? parse_cochain(cfg.doc.at("omega"), base.group, psi.k())
                            : Cochain(base.group, psi.k(), 2);
        return FellBundle::from_factor_system(FactorSystem(psi, std::move(twist)));
    }();
    const auto rep = verify_axioms(bundle, cfg.samples, cfg.seed, cfg.tol);
    json report = axiom_report_to_json(rep);
    report["command"] = "verify-axioms";
    report["group"] = group_echo(base.group);
    report["samples"] = cfg.samples;
    report["seed"] = cfg.seed;
    return {rep.all_pass() ? 0 : 1, std::move(report)};
}

JobResult job_obstruction(const JobConfig& cfg) {
    const auto base = parse_base(cfg);
    const auto psi = psi_or_trivial(cfg, base);
    if (!cfg.doc.contains("lambda")) throw InputError("obstruction: missing 'lambda'");
    const PreFactorSystem pre(psi, parse_cochain(cfg.doc.at("lambda"), base.group, psi.k()));
    const auto obs = obstruction(pre);
    json report{{"command", "obstruction"},
                {"obstruction", cochain_to_json(obs)},
                {"is_zero", obs.is_zero()},
                {"is_cocycle", is_cocycle(obs, psi.action())}};
    return {0, std::move(report)};
}

JobResult job_repair(const JobConfig& cfg) {
    const auto base = parse_base(cfg);
    const auto psi = psi_or_trivial(cfg, base);
    if (!cfg.doc.contains("lambda")) throw InputError("repair: missing 'lambda'");
    const PreFactorSystem pre(psi, parse_cochain(cfg.doc.at("lambda"), base.group, psi.k()));
    try {
        const auto fixed = repair(pre);
        const auto cc = characteristic_class(pre);
        json report{{"command", "repair"},
                    {"vanishing", true},
                    {"witness", cochain_to_json(*cc.witness)},
                    {"repaired", factor_system_to_json(fixed)}};
        return {0, std::move(report)};
    } catch (const ObstructionError& e) {
        json report{{"command", "repair"},
                    {"vanishing", false},
                    {"h3_representative", cochain_to_json(e.representative)}};
        return {1, std::move(report)};
    }
}

JobResult job_classify(const JobConfig& cfg) {
    const auto base = parse_base(cfg);
    const auto psi = psi_or_trivial(cfg, base);
    const auto m = modulus_or_default(cfg, base.group);
    const auto reps = ext_classes(psi, m);

    json rep_list = json::array();
    for (const auto& fs : reps) rep_list.push_back(factor_system_to_json(fs));
    json report{{"command", "classify"},
                {"psi", psi_to_json(psi)},
                {"modulus", m},
                {"class_count", reps.size()},
                {"representatives", std::move(rep_list)},
                {"pairwise_inequivalent", true},
                {"caveat", kModulusCaveat}};
    if (!psi.action().is_trivial()) report["action_caveat"] = kActionCaveat;

    int exit_code = 0;
    if (cfg.oracle) {
        const auto oracle = brute_force_classes(base.group, psi.action(), 2, m);
        const bool agree = oracle.size() == reps.size();
        report["oracle"] = json{{"class_count", oracle.size()}, {"agrees", agree}};
        if (!agree) exit_code = 1;
    }
    return {exit_code, std::move(report)};
}

JobResult job_equiv(const JobConfig& cfg) {
    const auto base = parse_base(cfg);
    const auto parse_fs = [&](const char* key) {
        if (!cfg.doc.contains(key)) throw InputError(std::string("equiv: missing '") + key + "'");
        const auto& spec = cfg.doc.at(key);
        check_keys(spec, {"psi", "omega"}, key);
        auto psi = spec.contains("psi") ? parse_psi(spec.at("psi"), base.group, base.algebra)
                                        : PicardHom::trivial(base.group, base.algebra);
        Cochain twist = spec.contains("omega")
                            ? parse_cochain(spec.at("omega"), base.group, psi.k())
                            : Cochain(base.group, psi.k(), 2);
        return FactorSystem(std::move(psi), std::move(twist));
    };
    const auto fs1 = parse_fs("fs1");
    const auto fs2 = parse_fs("fs2");
    const auto witness = are_equivalent(fs1, fs2, 2, cfg.seed, cfg.tol);
    json report{{"command", "equiv"}, {"equivalent", witness.has_value()}};
    report["witness"] = witness ? cochain_to_json(witness->varpi) : json(nullptr);
    return {witness ? 0 : 1, std::move(report)};
}

JobResult job_crossed_verify(const JobConfig& cfg) {
    const auto base = parse_base(cfg);
    if (!cfg.doc.contains("twisted_action")) throw InputError("crossed-verify: missing 'twisted_action'");
    const auto ta = parse_twisted_action(cfg.doc.at("twisted_action"), base.group, base.algebra, cfg.tol);
    const auto rep = verify_twisted_action(ta, cfg.tol);
    const auto cond = [&](const ConditionResult& c) {
        json entry{{"pass", c.pass}, {"max_residual", round12(c.max_residual)}};
        entry["witness"] = c.pass || c.witness.empty() ? json(nullptr) : json(c.witness);
        return entry;
    };
    json report{{"command", "crossed-verify"},
                {"conditions",
                 json{{"normalization", cond(rep.normalization)},
                      {"unitarity", cond(rep.unitarity)},
                      {"C1_twisted_action", cond(rep.twisted_action)},
                      {"C2_twisted_cocycle", cond(rep.twisted_cocycle)}}},
                {"all_pass", rep.all_pass()}};
    return {rep.all_pass() ? 0 : 1, std::move(report)};
}

JobResult job_crossed_build(const JobConfig& cfg) {
    const auto base = parse_base(cfg);
    if (!cfg.doc.contains("twisted_action")) throw InputError("crossed-build: missing 'twisted_action'");
    const auto ta = parse_twisted_action(cfg.doc.at("twisted_action"), base.group, base.algebra, cfg.tol);
    const auto bundle = build_crossed_product(ta, cfg.tol);  // InputError when C1/C2 fail
    const auto rep = verify_axioms(bundle, cfg.samples, cfg.seed, cfg.tol);

    json report = axiom_report_to_json(rep);
    report["command"] = "crossed-build";
    report["fibers"] = fibers_to_json(bundle);
    const auto section = find_unitary_section(bundle, cfg.tol);
    report["unitary_section_exists"] = section.has_value();
    if (section) {
        const auto translates = check_unitary_translates(bundle, *section, cfg.tol);
        report["unitary_translates_span"] = translates.pass;
    }
    return {rep.all_pass() ? 0 : 1, std::move(report)};
}

JobResult job_extract(const JobConfig& cfg) {
    const auto base = parse_base(cfg);
    if (cfg.doc.contains("twisted_action") && (cfg.doc.contains("omega") || cfg.doc.contains("psi")))
        throw InputError("extract: give either psi/omega or twisted_action, not both");
    FellBundle bundle = [&] {
        if (cfg.doc.contains("twisted_action"))
            return FellBundle::from_twisted_action(
                parse_twisted_action(cfg.doc.at("twisted_action"), base.group, base.algebra, cfg.tol),
                cfg.tol);
        const auto psi = psi_or_trivial(cfg, base);
        Cochain twist = cfg.doc.contains("omega")
                            ? parse_cochain(cfg.doc.at("omega"), base.group, psi.k())
                            : Cochain(base.group, psi.k(), 2);
        return FellBundle::from_factor_system(FactorSystem(psi, std::move(twist)));
    }();

    const auto section = find_unitary_section(bundle, cfg.tol);
    if (!section) {
        json report{{"command", "extract"},
                    {"unitary_section_exists", false},
                    {"reason", "psi moves a block to a different size; not a crossed product bundle"}};
        return {1, std::move(report)};
    }

    const auto ta = extract_twisted_action(bundle, *section, cfg.tol);
    const auto rebuilt = build_crossed_product(ta, 100.0 * cfg.tol);
    // coordinates consistent with the crossed multiplication: b = s u_g^*
    const auto phi = [&](const BundleElement& s) {
        const auto val = bundle.as_algebra(
            bundle.mul(s, bundle.star((*section)[static_cast<std::size_t>(s.base)])));
        return rebuilt.element(s.base, BimoduleElement{rebuilt.algebra(), rebuilt.sigma(s.base),
                                                       val.blocks});
    };
    const auto equiv = check_equivalence_map(bundle, rebuilt, phi, 2, cfg.seed, 10.0 * cfg.tol);

    json section_json = json::object();
    for (int g = 0; g < bundle.group()->order(); ++g)
        section_json[std::to_string(g)] =
            bimodule_element_to_json((*section)[static_cast<std::size_t>(g)].value);
    json report{{"command", "extract"},
                {"unitary_section_exists", true},
                {"section", std::move(section_json)},
                {"twisted_action", twisted_action_to_json(ta)},
                {"roundtrip_equivalent", equiv.pass},
                {"roundtrip_residual", round12(equiv.max_residual)}};
    return {equiv.pass ? 0 : 1, std::move(report)};
}

JobResult job_demo_qtorus(const JobConfig& cfg) {
    std::vector<std::vector<Angle>> theta;
    if (cfg.doc.contains("theta")) {
        theta = parse_theta(cfg.doc.at("theta"));
    } else {
        theta = {{Angle(), Angle::of(1, 5)}, {Angle::of(-1, 5), Angle()}};
    }
    int rank = static_cast<int>(theta.size());
    if (cfg.doc.contains("group")) {
        const auto r = free_abelian_rank(cfg.doc.at("group"));
        if (!r) throw InputError("demo-qtorus: group must be free_abelian:d");
        if (*r != rank) throw InputError("demo-qtorus: theta size does not match group rank");
        rank = *r;
    }
    const auto twist = lazy_system(rank, theta);
    const LazyBundle bundle(twist);

    const int triples = 100;
    const bool cocycle_ok = lazy_cocycle_identity(twist, cfg.window, triples, cfg.seed);
    const auto rep = verify_axioms_lazy(bundle, cfg.window, cfg.samples, cfg.seed, cfg.tol);

    // commutation phases lambda(e_i,e_j) - lambda(e_j,e_i) = -theta_ij
    json phases = json::object();
    for (int i = 0; i < rank; ++i)
        for (int j = i + 1; j < rank; ++j) {
            std::vector<std::int64_t> ei(static_cast<std::size_t>(rank), 0), ej = ei;
            ei[static_cast<std::size_t>(i)] = 1;
            ej[static_cast<std::size_t>(j)] = 1;
            phases[std::to_string(i) + "," + std::to_string(j)] = (twist(ei, ej) - twist(ej, ei)).str();
        }

    json theta_json = json::array();
    for (const auto& row : theta) {
        json r = json::array();
        for (const auto& a : row) r.push_back(a.str());
        theta_json.push_back(std::move(r));
    }

    json report = axiom_report_to_json(rep);
    report["command"] = "demo-qtorus";
    report["rank"] = rank;
    report["theta"] = std::move(theta_json);
    report["window"] = cfg.window;
    report["cocycle_identity_triples"] = triples;
    report["cocycle_identity_exact"] = cocycle_ok;
    report["generator_commutation_phase"] = std::move(phases);
    const bool ok = cocycle_ok && rep.all_pass();
    return {ok ? 0 : 1, std::move(report)};
}

const std::set<std::string> kCommonKeys = {"group",  "algebra", "modulus", "samples",
                                           "seed",   "tol",     "window"};

void strict_keys(const JobConfig& cfg, std::initializer_list<const char*> extra,
                 const std::string& command) {
    for (auto it = cfg.doc.begin(); it != cfg.doc.end(); ++it) {
        if (kCommonKeys.count(it.key())) continue;
        bool ok = false;
        for (const char* e : extra)
            if (it.key() == e) {
                ok = true;
                break;
            }
        if (!ok) throw InputError("config: key '" + it.key() + "' is not valid for " + command);
    }
}

} // namespace

JobResult run_job(const std::string& command, const JobConfig& cfg) {
    if (command == "cohomology") {
        strict_keys(cfg, {"psi"}, command);
        return job_cohomology(cfg);
    }
    if (command == "verify-fs") {
        strict_keys(cfg, {"psi", "lambda"}, command);
        return job_verify_fs(cfg);
    }
    if (command == "build") {
        strict_keys(cfg, {"psi", "omega"}, command);
        return job_build(cfg);
    }
    if (command == "verify-axioms") {
        strict_keys(cfg, {"psi", "omega", "twisted_action", "theta"}, command);
        return job_verify_axioms(cfg);
    }
    if (command == "obstruction") {
        strict_keys(cfg, {"psi", "lambda"}, command);
        return job_obstruction(cfg);
    }
    if (command == "repair") {
        strict_keys(cfg, {"psi", "lambda"}, command);
        return job_repair(cfg);
    }
    if (command == "classify") {
        strict_keys(cfg, {"psi"}, command);
        return job_classify(cfg);
    }
    if (command == "equiv") {
        strict_keys(cfg, {"fs1", "fs2"}, command);
        return job_equiv(cfg);
    }
    if (command == "crossed-verify") {
        strict_keys(cfg, {"twisted_action"}, command);
        return job_crossed_verify(cfg);
    }
    if (command == "crossed-build") {
        strict_keys(cfg, {"twisted_action"}, command);
        return job_crossed_build(cfg);
    }
    if (command == "extract") {
        strict_keys(cfg, {"psi", "omega", "twisted_action"}, command);
        return job_extract(cfg);
    }
    if (command == "demo-qtorus") {
        strict_keys(cfg, {"theta"}, command);
        return job_demo_qtorus(cfg);
    }
    throw InputError("unknown command '" + command + "'");
}

} // namespace fell
