// Python bindings for the main operations.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <filesystem>

#include "opstrict/commands.hpp"
#include "opstrict/fixtures.hpp"
#include "opstrict/io.hpp"
#include "opstrict/strictify.hpp"
#include "opstrict/theory.hpp"

namespace py = pybind11;
using namespace opstrict;

namespace {

py::dict to_dict(const CheckReport& r) {
  py::list failures;
  for (const auto& f : r.failures) {
    py::dict d;
    d["check"] = f.check;
    d["instance"] = f.instance;
    d["expected"] = f.expected;
    d["actual"] = f.actual;
    failures.append(d);
  }
  py::dict out;
  out["passed"] = r.passed();
  out["instances"] = r.instances;
  out["failures"] = failures;
  return out;
}

OpId op_named(const TabulatedOperad& P, const std::string& name) {
  auto p = P.find(name);
  if (!p) throw Error("no element named " + name);
  return *p;
}

WeakPtr load_wpc(const std::string& path) {
  auto base = std::filesystem::path(path).parent_path();
  return parse_wpc(read_file(path), file_operad_loader(base));
}

RunConfig config_from(std::size_t arity_cap, std::size_t tree_size_cap,
                      std::size_t term_size_cap, std::size_t uniqueness_bound) {
  RunConfig c;
  c.arity_cap = arity_cap;
  c.tree_size_cap = tree_size_cap;
  c.term_size_cap = term_size_cap;
  c.uniqueness_bound = uniqueness_bound;
  c.json = true;
  return c;
}

py::dict to_dict(const CommandResult& r) {
  py::dict out;
  out["exit_code"] = static_cast<int>(r.report.exit_code());
  out["report"] = render_json(r.report);
  out["text"] = render_text(r.report);
  out["artifact"] = r.artifact ? py::cast(*r.artifact) : py::none();
  return out;
}

// pybind11 holders cannot point to const objects.
struct Weak {
  WeakPtr ptr;
};
struct Strict {
  StPtr ptr;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Plain operads, weak P-categories and their strictification";

  static py::exception<Error> error(m, "OpstrictError");
  static py::exception<ParseError> parse_error(m, "ParseError", error.ptr());
  static py::exception<CapExceeded> cap_exceeded(m, "CapExceeded", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::set_error(parse_error, e.what());
    } catch (const CapExceeded& e) {
      py::set_error(cap_exceeded, e.what());
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<TabulatedOperad, std::shared_ptr<TabulatedOperad>>(m, "Operad")
      .def_property_readonly("arity_cap", &TabulatedOperad::arity_cap)
      .def("__len__", &TabulatedOperad::size)
      .def_property_readonly("names",
                             [](const TabulatedOperad& P) {
                               std::vector<std::string> out;
                               for (const auto& e : P.elements()) out.push_back(e.name);
                               return out;
                             })
      .def_property_readonly("identity",
                             [](const TabulatedOperad& P) { return P.name(P.identity()); })
      .def("arity", [](const TabulatedOperad& P,
                       const std::string& p) { return P.arity(op_named(P, p)); })
      .def("of_arity",
           [](const TabulatedOperad& P, std::size_t n) {
             std::vector<std::string> out;
             for (auto p : P.of_arity(n)) out.push_back(P.name(p));
             return out;
           })
      .def("compose",
           [](const TabulatedOperad& P, const std::string& p, const std::vector<std::string>& ps) {
             std::vector<OpId> args;
             for (const auto& q : ps) args.push_back(op_named(P, q));
             return P.name(P.compose(op_named(P, p), args));
           })
      .def("check_laws", [](const TabulatedOperad& P) { return to_dict(check_operad_laws(P)); })
      .def("__str__", [](const TabulatedOperad& P) { return print_operad(P); });

  m.def("terminal_operad", [](std::size_t cap) {
    return std::make_shared<TabulatedOperad>(terminal_operad(cap));
  });
  m.def("cyclic_unary_operad", [](std::size_t order) {
    return std::make_shared<TabulatedOperad>(cyclic_unary_operad(order));
  });
  m.def("free_binary_operad", [](std::size_t cap) {
    return std::make_shared<TabulatedOperad>(free_binary_operad(cap));
  });
  m.def("parse_operad", [](const std::string& text) {
    return std::make_shared<TabulatedOperad>(parse_operad(text));
  });

  m.def(
      "enumerate_trees",
      [](const TabulatedOperad& P, std::size_t arity, std::size_t size_cap) {
        std::vector<std::string> out;
        for (const auto& t : enumerate_trees(P, arity, size_cap)) out.push_back(to_string(P, t));
        return out;
      },
      py::arg("operad"), py::arg("arity"), py::arg("size_cap"));
  m.def("eval_tree", [](const TabulatedOperad& P, const std::string& tree) {
    return P.name(eval_tree(P, parse_tree(P, tree)));
  });
  m.def("has_two_cell", [](const TabulatedOperad& P, const std::string& s, const std::string& t) {
    return has_two_cell(P, parse_tree(P, s), parse_tree(P, t));
  });

  m.def("check_strong_regularity", [](const std::string& text) {
    auto r = check_strong_regularity(parse_presentation(text));
    std::vector<std::pair<std::size_t, std::string>> violations;
    for (const auto& [eq, v] : r.violations) violations.emplace_back(eq, to_string(v));
    py::dict out;
    out["regular"] = r.regular;
    out["violations"] = violations;
    return out;
  });
  m.def(
      "compile_theory",
      [](const std::string& text, std::size_t arity_cap, std::size_t term_size_cap) {
        auto c = compile_operad(parse_presentation(text), arity_cap, term_size_cap);
        return std::make_shared<TabulatedOperad>(std::move(c.operad));
      },
      py::arg("text"), py::arg("arity_cap"), py::arg("term_size_cap"));

  py::class_<Weak>(m, "WeakPCategory")
      .def_property_readonly("operad",
                             [](const Weak& W) {
                               return std::make_shared<TabulatedOperad>(W.ptr->operad());
                             })
      .def_property_readonly("objects",
                             [](const Weak& W) {
                               std::vector<std::string> out;
                               const auto& A = W.ptr->category();
                               for (std::size_t i = 0; i < A.object_count(); ++i)
                                 out.push_back(A.name(ObjId(i)));
                               return out;
                             })
      .def("__str__", [](const Weak& W) { return print_wpc(*W.ptr); });

  m.def("load_wpc", [](const std::string& path) { return Weak{load_wpc(path)}; },
        py::arg("path"));
  m.def("indiscrete_fixture", [](std::size_t cap) { return Weak{indiscrete_fixture(cap)}; });
  m.def("cyclic_strict_fixture", [](std::size_t cap) { return Weak{cyclic_strict_fixture(cap)}; });
  m.def(
      "cyclic_twisted_fixture",
      [](std::size_t cap, const std::vector<int>& c) { return Weak{cyclic_twisted_fixture(cap, c)}; },
      py::arg("arity_cap"), py::arg("cochain"));
  m.def("idempotent_fixture", [](std::size_t cap) { return Weak{idempotent_fixture(cap)}; });

  m.def(
      "validate",
      [](const Weak& W, std::size_t size_cap) {
        auto r = validate_weak_p_category(*W.ptr, size_cap);
        auto out = to_dict(r.checks);
        out["suspects"] = r.suspects;
        out["trees"] = r.trees;
        out["edges"] = r.edges;
        return out;
      },
      py::arg("category"), py::arg("size_cap") = 3);
  m.def("is_strict", [](const Weak& W) { return check_strict_action(*W.ptr).passed(); });

  py::class_<Strict>(m, "Strictified")
      .def_property_readonly("strict", [](const Strict& S) { return Weak{S.ptr->strict()}; })
      .def_property_readonly("object_count",
                             [](const Strict& S) {
                               return S.ptr->category().object_count();
                             })
      .def_property_readonly("morphism_count",
                             [](const Strict& S) {
                               return S.ptr->category().morphism_count();
                             })
      .def("check_strict", [](const Strict& S) { return to_dict(check_strict(*S.ptr)); })
      .def("check_equivalence",
           [](const Strict& h) {
             const auto& S = h.ptr;
             auto F = build_F(S);
             auto out = to_dict(validate_weak_p_functor(F));
             auto eq = check_equivalence(S, F);
             out["equivalence"] = to_dict(eq.report);
             return out;
           })
      .def("check_unit",
           [](const Strict& S) { return to_dict(validate_weak_p_functor(build_unit(S.ptr))); })
      .def("self_factorization", [](const Strict& h) {
        const auto& S = h.ptr;
        auto r = factorize(S, S->strict(), build_unit(S));
        auto out = to_dict(r.report);
        bool identity = true;
        for (std::size_t x = 0; x < S->category().object_count(); ++x)
          identity = identity && r.H(ObjId(x)) == ObjId(x);
        out["identity_on_objects"] = identity;
        out["solutions"] = r.solutions;
        out["uniqueness_checked"] = r.uniqueness_checked;
        return out;
      });
  m.def("strictify", [](const Weak& W) { return Strict{strictify(W.ptr)}; });

  const RunConfig defaults;
  auto a1 = py::arg("arity_cap") = defaults.arity_cap;
  auto a2 = py::arg("tree_size_cap") = defaults.tree_size_cap;
  auto a3 = py::arg("term_size_cap") = defaults.term_size_cap;
  auto a4 = py::arg("uniqueness_bound") = defaults.uniqueness_bound;
  m.def(
      "cmd_compile_theory",
      [](const std::string& path, std::size_t ac, std::size_t tc, std::size_t sc, std::size_t ub) {
        return to_dict(cmd_compile_theory(path, config_from(ac, tc, sc, ub)));
      },
      py::arg("path"), a1, a2, a3, a4);
  m.def(
      "cmd_validate",
      [](const std::string& path, std::size_t ac, std::size_t tc, std::size_t sc, std::size_t ub) {
        return to_dict(cmd_validate(path, config_from(ac, tc, sc, ub)));
      },
      py::arg("path"), a1, a2, a3, a4);
  m.def(
      "cmd_strictify",
      [](const std::string& path, std::size_t ac, std::size_t tc, std::size_t sc, std::size_t ub) {
        return to_dict(cmd_strictify(path, config_from(ac, tc, sc, ub)));
      },
      py::arg("path"), a1, a2, a3, a4);
  m.def(
      "cmd_factorize",
      [](const std::string& source, const std::string& target, const std::string& functor,
         std::size_t ac, std::size_t tc, std::size_t sc, std::size_t ub) {
        return to_dict(cmd_factorize(source, target, functor, config_from(ac, tc, sc, ub)));
      },
      py::arg("source"), py::arg("target"), py::arg("functor"), a1, a2, a3, a4);
  m.def(
      "cmd_enumerate",
      [](const std::string& path, std::size_t arity, std::size_t ac, std::size_t tc,
         std::size_t sc, std::size_t ub) {
        return to_dict(cmd_enumerate(path, arity, config_from(ac, tc, sc, ub)));
      },
      py::arg("path"), py::arg("arity"), a1, a2, a3, a4);
}
