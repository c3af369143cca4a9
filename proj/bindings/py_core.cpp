#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "crn/errors.hpp"
#include "crn/json_io.hpp"
#include "crn/parse.hpp"
#include "crn/scaling.hpp"
#include "crn/simulate.hpp"

namespace py = pybind11;
using namespace crn;

namespace pybind11::detail {

// crn::Rational <-> fractions.Fraction, exactly in both directions.
template <>
struct type_caster<Rational> {
    PYBIND11_TYPE_CASTER(Rational, const_name("fractions.Fraction"));

    bool load(handle src, bool) {
        if (src.is_none()) return false;
        object fraction = module_::import("fractions").attr("Fraction");
        object value;
        try {
            value = fraction(src);
        } catch (const error_already_set&) {
            return false;
        }
        std::string num = str(value.attr("numerator"));
        std::string den = str(value.attr("denominator"));
        this->value = Rational(BigInt(num), BigInt(den));
        return true;
    }

    static handle cast(const Rational& src, return_value_policy, handle) {
        object fraction = module_::import("fractions").attr("Fraction");
        object num = module_::import("builtins").attr("int")(numerator(src).str());
        object den = module_::import("builtins").attr("int")(denominator(src).str());
        return fraction(num, den).release();
    }
};

}  // namespace pybind11::detail

namespace {

py::object json_to_py(const Json& value) {
    switch (value.type()) {
        case Json::value_t::null:
            return py::none();
        case Json::value_t::boolean:
            return py::bool_(value.get<bool>());
        case Json::value_t::number_integer:
            return py::int_(value.get<long long>());
        case Json::value_t::number_unsigned:
            return py::int_(value.get<unsigned long long>());
        case Json::value_t::number_float:
            return py::float_(value.get<double>());
        case Json::value_t::string:
            return py::str(value.get<std::string>());
        case Json::value_t::array: {
            py::list out;
            for (const auto& item : value) out.append(json_to_py(item));
            return out;
        }
        case Json::value_t::object: {
            py::dict out;
            for (auto it = value.begin(); it != value.end(); ++it)
                out[py::str(it.key())] = json_to_py(it.value());
            return out;
        }
        default:
            return py::none();
    }
}

State to_state(const std::vector<long long>& raw) { return raw; }

std::vector<int> resolve_tagged(const NetworkDocument& doc, const py::object& u) {
    if (u.is_none()) {
        if (doc.sets.size() == 1) return doc.sets.front().second;
        throw UsageError("pass u= species names, or declare exactly one set in the file");
    }
    if (py::isinstance<py::str>(u)) {
        if (auto named = doc.set_named(u.cast<std::string>())) return *named;
        auto id = doc.net.species_index(u.cast<std::string>());
        if (!id) throw UsageError("unknown species or set");
        return {*id};
    }
    std::vector<int> ids;
    for (const auto& item : u.cast<py::sequence>()) {
        if (py::isinstance<py::str>(item)) {
            auto id = doc.net.species_index(item.cast<std::string>());
            if (!id) throw UsageError("unknown species " + item.cast<std::string>());
            ids.push_back(*id);
        } else {
            ids.push_back(item.cast<int>());
        }
    }
    return ids;
}

StateBound make_bound(const py::object& total, const py::object& box) {
    StateBound bound;
    if (!total.is_none()) bound.total = total.cast<long long>();
    if (!box.is_none()) bound.box = box.cast<Counts>();
    return bound;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "reaction network reduction, exact stationary analysis, and simulation";

    py::register_exception<Error>(m, "CrnError");

    py::class_<NetworkDocument>(m, "Document")
        .def_property_readonly("species",
                               [](const NetworkDocument& d) { return d.net.species_names(); })
        .def_property_readonly("reactions",
                               [](const NetworkDocument& d) {
                                   std::vector<std::string> out;
                                   for (int r = 0; r < d.net.reaction_count(); ++r)
                                       out.push_back(d.net.reaction_to_string(r));
                                   return out;
                               })
        .def_property_readonly("sets",
                               [](const NetworkDocument& d) {
                                   py::dict out;
                                   for (const auto& [name, ids] : d.sets) {
                                       py::list names;
                                       for (int id : ids)
                                           names.append(d.net.species[static_cast<std::size_t>(id)].name);
                                       out[py::str(name)] = names;
                                   }
                                   return out;
                               })
        .def("intensity",
             [](const NetworkDocument& d, int reaction, const std::vector<long long>& x) {
                 return eval_intensity(d.net, reaction, to_state(x));
             })
        .def("delta",
             [](const NetworkDocument& d, int reaction) {
                 return reaction_delta(d.net.reactions.at(static_cast<std::size_t>(reaction)));
             })
        .def("validate",
             [](const NetworkDocument& d) {
                 std::vector<std::string> out;
                 for (const auto& v : validate_network(d.net)) out.push_back(v.detail);
                 return out;
             })
        .def("serialize", [](const NetworkDocument& d) { return serialize_network(d); })
        .def("__repr__", [](const NetworkDocument& d) {
            return "<Document " + std::to_string(d.net.species_count()) + " species, " +
                   std::to_string(d.net.reaction_count()) + " reactions>";
        });

    m.def("parse_network", &parse_network, py::arg("text"));
    m.def("load_network", &load_network_file, py::arg("path"));

    m.def(
        "compose",
        [](std::pair<Counts, Counts> a, std::pair<Counts, Counts> b) {
            ReactionPair pa{std::move(a.first), std::move(a.second)};
            ReactionPair pb{std::move(b.first), std::move(b.second)};
            ReactionPair out = compose(pa, pb);
            return std::make_pair(out.need, out.result);
        },
        "sequential composition of two reaction pairs");
    m.def("compose_fold", [](const std::vector<std::pair<Counts, Counts>>& pairs) {
        std::vector<ReactionPair> ps;
        for (const auto& [need, result] : pairs) ps.push_back({need, result});
        ReactionPair out = compose_fold(ps);
        return std::make_pair(out.need, out.result);
    });

    m.def(
        "leads_to",
        [](const NetworkDocument& doc, const std::vector<long long>& origin,
           const std::vector<long long>& target, std::size_t cap) -> py::object {
            switch (leads_to(doc.net, to_state(origin), to_state(target), cap)) {
                case Reach::yes:
                    return py::bool_(true);
                case Reach::no:
                    return py::bool_(false);
                default:
                    return py::none();  // undecided within the cap
            }
        },
        py::arg("doc"), py::arg("origin"), py::arg("target"), py::arg("cap") = 100000);

    m.def(
        "analyze",
        [](const NetworkDocument& doc, const py::object& u) {
            return json_to_py(condition_report_json(analyze_elimination(doc.net, resolve_tagged(doc, u))));
        },
        py::arg("doc"), py::arg("u") = py::none());

    py::class_<ReducedNetwork>(m, "Reduced")
        .def_property_readonly("reactions",
                               [](const ReducedNetwork& rn) {
                                   std::vector<std::string> out;
                                   for (std::size_t i = 0; i < rn.reactions.size(); ++i)
                                       out.push_back(rn.reaction_to_string(i));
                                   return out;
                               })
        .def_property_readonly(
            "report", [](const ReducedNetwork& rn) { return json_to_py(reduced_network_json(rn)); })
        .def("intensity",
             [](const ReducedNetwork& rn, std::size_t reaction, const std::vector<long long>& x) {
                 return reduced_intensity(rn, reaction, to_state(x));
             })
        .def(
            "truncated_intensity",
            [](const ReducedNetwork& rn, std::size_t reaction, const std::vector<long long>& x,
               std::size_t depth) {
                auto out = truncated_walk_sum(rn, rn.reactions.at(reaction).effect, to_state(x), depth);
                return py::make_tuple(out.value, out.tail_bound);
            },
            py::arg("reaction"), py::arg("x"), py::arg("depth") = 40)
        .def("__repr__", [](const ReducedNetwork& rn) {
            return "<Reduced " + std::to_string(rn.reactions.size()) + " reactions>";
        });

    m.def(
        "reduce",
        [](const NetworkDocument& doc, const py::object& u, std::size_t memo_cap) {
            return reduce(doc.net, resolve_tagged(doc, u), memo_cap);
        },
        py::arg("doc"), py::arg("u") = py::none(), py::arg("memo_cap") = 1000000);

    py::class_<Distribution>(m, "Distribution")
        .def_property_readonly("states",
                               [](const Distribution& d) {
                                   py::list out;
                                   for (const auto& s : d.states) out.append(py::tuple(py::cast(s)));
                                   return out;
                               })
        .def("p", [](const Distribution& d, const std::vector<long long>& x) { return d.p(x); })
        .def("p_float",
             [](const Distribution& d, const std::vector<long long>& x) { return d.p_float(x); })
        .def("items",
             [](const Distribution& d) {
                 py::list out;
                 for (std::size_t i = 0; i < d.size(); ++i) {
                     py::object p = d.mode == NumericMode::rational ? py::cast(d.exact[i])
                                                                    : py::cast(d.approx[i]);
                     out.append(py::make_tuple(py::tuple(py::cast(d.states[i])), p));
                 }
                 return out;
             })
        .def_property_readonly("mode",
                               [](const Distribution& d) {
                                   return d.mode == NumericMode::rational ? "rational" : "float";
                               })
        .def_property_readonly("normalization",
                               [](const Distribution& d) -> py::object {
                                   if (!d.normalization) return py::none();
                                   return py::cast(*d.normalization);
                               })
        .def("__len__", [](const Distribution& d) { return d.size(); })
        .def("__repr__", [](const Distribution& d) {
            return "<Distribution over " + std::to_string(d.size()) + " states>";
        });

    struct PySystem {
        std::shared_ptr<StochasticSystem> sys;
        std::shared_ptr<NetworkDocument> doc;  // kept when built from a document
    };

    py::class_<PySystem>(m, "System")
        .def_property_readonly("species",
                               [](const PySystem& s) { return s.sys->species_names(); })
        .def_property_readonly("channels",
                               [](const PySystem& s) {
                                   std::vector<std::string> out;
                                   for (int c = 0; c < s.sys->channel_count(); ++c)
                                       out.push_back(s.sys->channel_label(c));
                                   return out;
                               })
        .def("intensity", [](const PySystem& s, int channel, const std::vector<long long>& x) {
            return s.sys->intensity(channel, to_state(x));
        });

    m.def(
        "system",
        [](const NetworkDocument& doc, bool reduced, const py::object& u) {
            PySystem out;
            out.doc = std::make_shared<NetworkDocument>(doc);
            if (reduced)
                out.sys = std::make_shared<ReducedSystem>(reduce(doc.net, resolve_tagged(doc, u)));
            else
                out.sys = std::make_shared<NetworkSystem>(doc.net);
            return out;
        },
        py::arg("doc"), py::arg("reduced") = false, py::arg("u") = py::none());

    py::class_<ComponentSet>(m, "Component")
        .def_property_readonly("states",
                               [](const ComponentSet& c) {
                                   py::list out;
                                   for (const auto& s : c.states) out.append(py::tuple(py::cast(s)));
                                   return out;
                               })
        .def_readonly("closed", &ComponentSet::closed)
        .def_readonly("mutually_reachable", &ComponentSet::mutually_reachable)
        .def_readonly("bound_exceeded", &ComponentSet::bound_exceeded)
        .def("__len__", [](const ComponentSet& c) { return c.size(); });

    m.def(
        "component",
        [](const PySystem& s, const std::vector<long long>& seed, const py::object& total,
           const py::object& box) {
            return irreducible_component(*s.sys, to_state(seed), make_bound(total, box));
        },
        py::arg("system"), py::arg("seed"), py::arg("total") = py::none(), py::arg("box") = py::none());

    m.def(
        "stationary",
        [](const PySystem& s, const ComponentSet& comp, const std::string& mode) {
            SolveOptions options;
            options.mode = mode == "float" ? NumericMode::floating : NumericMode::rational;
            return stationary_distribution(*s.sys, comp, options);
        },
        py::arg("system"), py::arg("component"), py::arg("mode") = "rational");

    m.def("check_stationary", [](const PySystem& s, const ComponentSet& comp, const Distribution& d) {
        return json_to_py(stationary_check_json(check_stationary(*s.sys, comp, d)));
    });
    m.def("check_complex_balance",
          [](const PySystem& s, const ComponentSet& comp, const Distribution& d) {
              return json_to_py(complex_balance_json(check_complex_balance(*s.sys, comp, d)));
          });
    m.def("check_detailed_balance",
          [](const PySystem& s, const ComponentSet& comp, const Distribution& d) {
              return json_to_py(detailed_balance_json(check_detailed_balance(*s.sys, comp, d)));
          });

    m.def(
        "product_form",
        [](const std::vector<Rational>& c, const ComponentSet& comp, const std::string& mode) {
            return product_form_distribution(
                c, comp, mode == "float" ? NumericMode::floating : NumericMode::rational);
        },
        py::arg("c"), py::arg("component"), py::arg("mode") = "rational");

    m.def("equilibrium_residuals", [](const NetworkDocument& doc, const std::vector<Rational>& c) {
        py::dict out;
        for (const auto& [label, r] : deterministic_complex_balance_residuals(doc.net, c))
            out[py::str(label)] = py::cast(r);
        return out;
    });
    m.def("find_equilibrium", [](const NetworkDocument& doc) -> py::object {
        auto found = find_complex_balance_equilibrium(doc.net);
        if (!found) return py::none();
        return py::cast(*found);
    });

    m.def("conditional", [](const Distribution& d, const py::function& keep) {
        return conditional_distribution(d, [&](const State& x) {
            return keep(py::tuple(py::cast(x))).cast<bool>();
        });
    });
    m.def("tv_distance", &tv_distance);
    m.def("marginal", &marginal, py::arg("distribution"), py::arg("keep"));

    m.def(
        "scale_kinetics",
        [](const NetworkDocument& doc, const py::object& u, const std::vector<Rational>& beta,
           long long factor) {
            NetworkDocument out = doc;
            out.net = scale_kinetics(doc.net, resolve_tagged(doc, u), {beta, factor});
            return out;
        },
        py::arg("doc"), py::arg("u"), py::arg("beta"), py::arg("factor"));

    m.def(
        "scaled_distribution",
        [](const NetworkDocument& doc, const py::object& u, const std::vector<Rational>& beta,
           long long factor, const ComponentSet& comp, const Distribution& pi, bool verify) {
            auto out = scaled_distribution(doc.net, resolve_tagged(doc, u), {beta, factor}, comp, pi,
                                           verify);
            return py::make_tuple(out.dist, out.mass);
        },
        py::arg("doc"), py::arg("u"), py::arg("beta"), py::arg("factor"), py::arg("component"),
        py::arg("pi"), py::arg("verify") = true);

    m.def(
        "limit_distribution",
        [](const Distribution& pi, const NetworkDocument& doc, const py::object& u,
           const std::vector<Rational>& beta) {
            return limit_distribution(pi, resolve_tagged(doc, u), beta);
        },
        py::arg("pi"), py::arg("doc"), py::arg("u"), py::arg("beta"));

    m.def(
        "convergence_table",
        [](const NetworkDocument& doc, const py::object& u, const std::vector<Rational>& beta,
           const ComponentSet& comp, const Distribution& pi, const std::vector<long long>& factors) {
            py::list out;
            for (const auto& row :
                 convergence_table(doc.net, resolve_tagged(doc, u), beta, comp, pi, factors)) {
                py::dict item;
                item["factor"] = row.factor;
                item["mass"] = py::cast(row.mass);
                item["tv"] = py::cast(row.tv);
                out.append(item);
            }
            return out;
        },
        py::arg("doc"), py::arg("u"), py::arg("beta"), py::arg("component"), py::arg("pi"),
        py::arg("factors"));

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("times", &Trajectory::times)
        .def_property_readonly("states",
                               [](const Trajectory& t) {
                                   py::list out;
                                   for (const auto& s : t.states) out.append(py::tuple(py::cast(s)));
                                   return out;
                               })
        .def_readonly("t_end", &Trajectory::t_end)
        .def_readonly("absorbed", &Trajectory::absorbed)
        .def_property_readonly("jumps", &Trajectory::jumps);

    m.def(
        "gillespie",
        [](const PySystem& s, const std::vector<long long>& x0, double t_end, std::uint64_t seed,
           std::size_t max_jumps) {
            SimOptions options;
            options.max_jumps = max_jumps;
            return gillespie(*s.sys, to_state(x0), t_end, seed, options);
        },
        py::arg("system"), py::arg("x0"), py::arg("t_end"), py::arg("seed") = 1,
        py::arg("max_jumps") = 10000000);

    m.def("empirical_distribution", &empirical_distribution, py::arg("trajectory"),
          py::arg("burn_in") = 0.0);
}
