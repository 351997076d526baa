#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fell/jobs.hpp"

namespace py = pybind11;
using namespace fell;

namespace {

// pybind11 holders cannot be shared_ptr<const T>; the core hands out
// const pointers (values are immutable), so const_pointer_cast is safe.
using GroupH = std::shared_ptr<FiniteGroup>;
using AlgebraH = std::shared_ptr<BlockAlgebra>;

GroupH unconst(const GroupPtr& p) { return std::const_pointer_cast<FiniteGroup>(p); }
AlgebraH unconst(const AlgebraPtr& p) { return std::const_pointer_cast<BlockAlgebra>(p); }

py::object json_to_py(const json& j) {
    switch (j.type()) {
        case json::value_t::null:
            return py::none();
        case json::value_t::boolean:
            return py::bool_(j.get<bool>());
        case json::value_t::number_integer:
            return py::int_(j.get<std::int64_t>());
        case json::value_t::number_unsigned:
            return py::int_(j.get<std::uint64_t>());
        case json::value_t::number_float:
            return py::float_(j.get<double>());
        case json::value_t::string:
            return py::str(j.get<std::string>());
        case json::value_t::array: {
            py::list out;
            for (const auto& e : j) out.append(json_to_py(e));
            return out;
        }
        case json::value_t::object: {
            py::dict out;
            for (auto it = j.begin(); it != j.end(); ++it)
                out[py::str(it.key())] = json_to_py(it.value());
            return out;
        }
        default:
            return py::none();
    }
}

Cochain make_cochain(const GroupH& group, int k, int degree,
                     const std::map<std::vector<int>, std::vector<std::string>>& values) {
    Cochain c(group, k, degree);
    for (const auto& [tuple, angles] : values) {
        AngleVec v;
        for (const auto& s : angles) v.push_back(Angle::parse(s));
        c.set(tuple, std::move(v));
    }
    return c;
}

std::vector<std::vector<std::string>> cochain_values(const Cochain& c) {
    std::vector<std::vector<std::string>> out;
    for (std::size_t i = 0; i < c.tuples(); ++i) {
        std::vector<std::string> row;
        for (const auto& a : c.entry(i)) row.push_back(a.str());
        out.push_back(std::move(row));
    }
    return out;
}

PicardHom make_psi(const GroupH& group, const AlgebraH& algebra,
                   const std::vector<std::vector<int>>& perms) {
    std::vector<BlockPermutation> p;
    for (const auto& v : perms) p.emplace_back(v);
    return PicardHom(group, algebra, std::move(p));
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Discrete saturated Fell bundles over finite groups";

    py::register_exception<InputError>(m, "InputError");
    py::register_exception<CapacityError>(m, "CapacityError");

    py::class_<FiniteGroup, GroupH>(m, "Group")
        .def(py::init<std::vector<std::vector<int>>>(), py::arg("cayley"))
        .def_property_readonly("order", &FiniteGroup::order)
        .def("mul", &FiniteGroup::mul)
        .def("inv", &FiniteGroup::inv)
        .def("cayley", &FiniteGroup::cayley);

    m.def("make_cyclic", [](int n) { return unconst(make_cyclic(n)); }, py::arg("n"));
    m.def("direct_product", [](const GroupH& a, const GroupH& b) {
        return unconst(direct_product(*a, *b));
    });
    m.def("validate_group", &validate_group, py::arg("cayley"));

    py::class_<BlockAlgebra, AlgebraH>(m, "BlockAlgebra")
        .def(py::init<std::vector<int>>(), py::arg("block_sizes"))
        .def_property_readonly("blocks", &BlockAlgebra::blocks)
        .def_property_readonly("sizes", [](const BlockAlgebra& a) { return a.sizes(); });

    py::class_<Cochain>(m, "Cochain")
        .def(py::init(&make_cochain), py::arg("group"), py::arg("k"), py::arg("degree"),
             py::arg("values") = std::map<std::vector<int>, std::vector<std::string>>{})
        .def_property_readonly("degree", &Cochain::degree)
        .def_property_readonly("k", &Cochain::k)
        .def("value",
             [](const Cochain& c, const std::vector<int>& tuple) {
                 std::vector<std::string> out;
                 for (const auto& a : c.value(tuple)) out.push_back(a.str());
                 return out;
             })
        .def("values", &cochain_values)
        .def("is_zero", &Cochain::is_zero)
        .def("__eq__", [](const Cochain& a, const Cochain& b) { return a == b; })
        .def("__add__", [](const Cochain& a, const Cochain& b) { return a + b; })
        .def("__sub__", [](const Cochain& a, const Cochain& b) { return a - b; })
        .def("__neg__", [](const Cochain& a) { return -a; });

    py::class_<GroupAction>(m, "GroupAction")
        .def_static("trivial",
                    [](const GroupH& g, int k) { return GroupAction::trivial(g, k); },
                    py::arg("group"), py::arg("k"))
        .def(py::init([](const GroupH& group, const std::vector<std::vector<int>>& perms) {
                 std::vector<BlockPermutation> p;
                 for (const auto& v : perms) p.emplace_back(v);
                 return GroupAction(group, std::move(p));
             }),
             py::arg("group"), py::arg("perms"))
        .def_property_readonly("k", &GroupAction::k)
        .def("is_trivial", &GroupAction::is_trivial);

    m.def("differential", &differential, py::arg("cochain"), py::arg("action"));
    m.def("is_cocycle", &is_cocycle, py::arg("cochain"), py::arg("action"));
    m.def("coboundary_solve", &coboundary_solve, py::arg("cocycle"), py::arg("action"));
    m.def("h2_classes",
          [](const GroupH& g, const GroupAction& a, std::int64_t m_) {
              return h2_classes(g, a, m_);
          },
          py::arg("group"), py::arg("action"), py::arg("modulus"));
    m.def("brute_force_classes",
          [](const GroupH& g, const GroupAction& a, int degree, std::int64_t m_) {
              return brute_force_classes(g, a, degree, m_);
          },
          py::arg("group"), py::arg("action"), py::arg("degree"), py::arg("modulus"));

    m.def("smith_diagonal", [](const std::vector<std::vector<std::int64_t>>& rows) {
        IntMatrix a(rows.size(), rows.empty() ? 0 : rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < rows[i].size(); ++j) a.at(i, j) = rows[i][j];
        return smith_normal_form(a).diagonal();
    });

    py::class_<PicardHom>(m, "PicardHom")
        .def(py::init(&make_psi), py::arg("group"), py::arg("algebra"), py::arg("perms"))
        .def_static("trivial",
                    [](const GroupH& g, const AlgebraH& a) { return PicardHom::trivial(g, a); },
                    py::arg("group"), py::arg("algebra"))
        .def_property_readonly("k", &PicardHom::k)
        .def("action", &PicardHom::action)
        .def("size_preserving", &PicardHom::size_preserving)
        .def("sigma", [](const PicardHom& p, int g) { return p.sigma(g).images(); });

    py::class_<FactorSystem>(m, "FactorSystem")
        .def(py::init<PicardHom, Cochain>(), py::arg("psi"), py::arg("twist"))
        .def_property_readonly("twist", &FactorSystem::twist)
        .def_property_readonly("psi", &FactorSystem::picard);

    py::class_<PreFactorSystem>(m, "PreFactorSystem")
        .def(py::init<PicardHom, Cochain>(), py::arg("psi"), py::arg("twist"))
        .def_property_readonly("twist", &PreFactorSystem::twist)
        .def_property_readonly("psi", &PreFactorSystem::picard);

    m.def("canonical_system", &canonical_system, py::arg("psi"));
    m.def("is_factor_system", &is_factor_system, py::arg("pre"), py::arg("samples") = 2,
          py::arg("seed") = 0, py::arg("tol") = 1e-9);
    m.def("obstruction", &obstruction, py::arg("pre"));
    m.def("characteristic_class", [](const PreFactorSystem& pre) {
        auto cc = characteristic_class(pre);
        return py::make_tuple(cc.obstruction_cocycle, cc.vanishing,
                              cc.witness ? py::cast(*cc.witness) : py::none());
    });
    m.def("repair", &repair, py::arg("pre"));

    m.def(
        "are_equivalent",
        [](const FactorSystem& a, const FactorSystem& b) -> py::object {
            const auto w = are_equivalent(a, b);
            return w ? py::cast(w->varpi) : py::none();
        },
        py::arg("fs1"), py::arg("fs2"));
    m.def("ext_classes", &ext_classes, py::arg("psi"), py::arg("modulus"));
    m.def("act", &act, py::arg("fs"), py::arg("cocycle"));

    py::class_<FellBundle>(m, "FellBundle")
        .def_static("from_factor_system", &FellBundle::from_factor_system, py::arg("fs"))
        .def_property_readonly("group",
                               [](const FellBundle& b) { return unconst(b.group()); })
        .def_property_readonly("algebra",
                               [](const FellBundle& b) { return unconst(b.algebra()); })
        .def("sigma", [](const FellBundle& b, int g) { return b.sigma(g).images(); })
        .def("fiber_dim", [](const FellBundle& b, int g) {
            return bimodule_dim(*b.algebra(), b.sigma(g));
        });

    m.def(
        "verify_axioms",
        [](const FellBundle& bundle, int samples, std::uint64_t seed, double tol) {
            return json_to_py(axiom_report_to_json(verify_axioms(bundle, samples, seed, tol)));
        },
        py::arg("bundle"), py::arg("samples") = 32, py::arg("seed") = 0, py::arg("tol") = 1e-9);

    m.def(
        "lazy_cocycle_identity",
        [](const std::vector<std::vector<std::string>>& theta, int window, int triples,
           std::uint64_t seed) {
            std::vector<std::vector<Angle>> t;
            for (const auto& row : theta) {
                std::vector<Angle> r;
                for (const auto& s : row) r.push_back(Angle::parse(s));
                t.push_back(std::move(r));
            }
            return lazy_cocycle_identity(lazy_system(static_cast<int>(t.size()), t), window,
                                         triples, seed);
        },
        py::arg("theta"), py::arg("window") = 5, py::arg("triples") = 100, py::arg("seed") = 0);

    // the full CLI surface: (exit_code, report) from a JSON config string
    m.def(
        "run",
        [](const std::string& command, const std::string& config_json) {
            auto cfg = parse_config(config_json);
            const auto result = run_job(command, cfg);
            return py::make_tuple(result.exit_code, json_to_py(result.report));
        },
        py::arg("command"), py::arg("config_json") = std::string("{}"));
}
