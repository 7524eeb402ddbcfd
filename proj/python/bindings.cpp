#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "facline/analysis.hpp"
#include "facline/core.hpp"
#include "facline/mechanisms.hpp"
#include "facline/optimal.hpp"

namespace py = pybind11;
using namespace facline;

namespace {

// FacilityOutcome's first alternative has no default constructor, which
// rules out pybind11's generic variant caster; unpack it by hand.
py::object outcome_to_object(FacilityOutcome&& outcome) {
    if (auto* fixed = std::get_if<Placement>(&outcome))
        return py::cast(std::move(*fixed));
    return py::cast(std::move(std::get<RandomizedPlacement>(outcome)));
}

}  // namespace

PYBIND11_MODULE(_facline, m) {
    m.doc() = "truthful facility location on [0,1] with additive-error analysis";

    py::register_exception<BudgetExceeded>(m, "BudgetExceeded");

    py::class_<LocationProfile>(m, "LocationProfile")
        .def(py::init<std::vector<double>>(), py::arg("reports"))
        .def("reports", &LocationProfile::reports)
        .def("size", &LocationProfile::size)
        .def("leftmost", &LocationProfile::leftmost)
        .def("rightmost", &LocationProfile::rightmost)
        .def("center", &LocationProfile::center)
        .def("__len__", &LocationProfile::size)
        .def("__repr__", [](const LocationProfile& p) {
            std::string out = "LocationProfile([";
            const auto& r = p.reports();
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (i > 0) out += ", ";
                out += std::to_string(r[i]);
            }
            return out + "])";
        });

    py::class_<Placement>(m, "Placement")
        .def(py::init<std::vector<double>>(), py::arg("locations"))
        .def("locations", &Placement::locations)
        .def("__len__", [](const Placement& p) { return p.locations().size(); })
        .def("__eq__",
             [](const Placement& a, const Placement& b) { return a == b; })
        .def("__repr__", [](const Placement& p) {
            std::string out = "Placement([";
            const auto& locs = p.locations();
            for (std::size_t i = 0; i < locs.size(); ++i) {
                if (i > 0) out += ", ";
                out += std::to_string(locs[i]);
            }
            return out + "])";
        });

    py::class_<WeightedPlacement>(m, "WeightedPlacement")
        .def(py::init<Placement, double>(), py::arg("placement"),
             py::arg("probability"))
        .def_readonly("placement", &WeightedPlacement::placement)
        .def_readonly("probability", &WeightedPlacement::probability);

    py::class_<RandomizedPlacement>(m, "RandomizedPlacement")
        .def(py::init<std::vector<WeightedPlacement>>(), py::arg("atoms"))
        .def_static("degenerate", &RandomizedPlacement::degenerate,
                    py::arg("placement"))
        .def("atoms", &RandomizedPlacement::atoms)
        .def("total_probability", &RandomizedPlacement::total_probability);

    py::enum_<ObjectiveKind>(m, "ObjectiveKind")
        .value("MaxCost", ObjectiveKind::MaxCost)
        .value("AverageCost", ObjectiveKind::AverageCost);

    py::enum_<MaxCostConvention>(m, "MaxCostConvention")
        .value("ExpectationOfMax", MaxCostConvention::ExpectationOfMax)
        .value("MaxOfExpectations", MaxCostConvention::MaxOfExpectations);

    py::class_<Objective>(m, "Objective")
        .def_static("max_cost", &Objective::max_cost,
                    py::arg("convention") = MaxCostConvention::ExpectationOfMax)
        .def_static("average_cost", &Objective::average_cost)
        .def_readonly("kind", &Objective::kind)
        .def_readonly("convention", &Objective::convention);

    m.def("point_cost", &point_cost, py::arg("location"), py::arg("placement"));
    m.def("expected_point_cost",
          py::overload_cast<double, const RandomizedPlacement&>(
              &expected_point_cost),
          py::arg("location"), py::arg("distribution"));
    m.def("max_cost",
          py::overload_cast<const LocationProfile&, const Placement&>(&max_cost),
          py::arg("profile"), py::arg("placement"));
    m.def("max_cost",
          py::overload_cast<const LocationProfile&, const RandomizedPlacement&,
                            MaxCostConvention>(&max_cost),
          py::arg("profile"), py::arg("distribution"),
          py::arg("convention") = MaxCostConvention::ExpectationOfMax);
    m.def("average_cost",
          py::overload_cast<const LocationProfile&, const Placement&>(
              &average_cost),
          py::arg("profile"), py::arg("placement"));
    m.def("average_cost",
          py::overload_cast<const LocationProfile&, const RandomizedPlacement&>(
              &average_cost),
          py::arg("profile"), py::arg("distribution"));
    m.def(
        "objective_cost",
        [](const LocationProfile& profile, const Placement& placement,
           const Objective& objective) {
            return objective_cost(profile, placement, objective);
        },
        py::arg("profile"), py::arg("outcome"), py::arg("objective"));
    m.def(
        "objective_cost",
        [](const LocationProfile& profile, const RandomizedPlacement& lottery,
           const Objective& objective) {
            return objective_cost(profile, lottery, objective);
        },
        py::arg("profile"), py::arg("outcome"), py::arg("objective"));

    py::enum_<MechanismKind>(m, "MechanismKind")
        .value("Median", MechanismKind::Median)
        .value("Dictator", MechanismKind::Dictator)
        .value("FixedPoint", MechanismKind::FixedPoint)
        .value("Lrc", MechanismKind::Lrc)
        .value("Blrc", MechanismKind::Blrc)
        .value("PhantomHalf", MechanismKind::PhantomHalf)
        .value("EqualSpread", MechanismKind::EqualSpread)
        .value("Pec", MechanismKind::Pec)
        .value("Epec", MechanismKind::Epec)
        .value("Fifths", MechanismKind::Fifths)
        .value("Mean", MechanismKind::Mean);

    py::class_<MechanismSpec>(m, "MechanismSpec")
        .def(py::init<>())
        .def_static("parse", &MechanismSpec::parse, py::arg("text"))
        .def("to_string", &MechanismSpec::to_string)
        .def("randomized", &MechanismSpec::randomized)
        .def("facilities", &MechanismSpec::facilities)
        .def(
            "apply",
            [](const MechanismSpec& spec, const LocationProfile& profile) {
                return outcome_to_object(spec.apply(profile));
            },
            py::arg("profile"))
        .def_readwrite("kind", &MechanismSpec::kind)
        .def_readwrite("agent_index", &MechanismSpec::agent_index)
        .def_readwrite("position", &MechanismSpec::position)
        .def_readwrite("facility_count", &MechanismSpec::facility_count);

    py::class_<Mechanism>(m, "Mechanism")
        .def_static("from_spec", &Mechanism::from_spec, py::arg("spec"))
        .def_static("parse", &Mechanism::parse, py::arg("text"))
        .def("name", &Mechanism::name)
        .def("facility_count", &Mechanism::facility_count)
        .def("randomized", &Mechanism::randomized)
        .def(
            "__call__",
            [](const Mechanism& mech, const LocationProfile& profile) {
                return outcome_to_object(mech(profile));
            },
            py::arg("profile"))
        .def("__repr__", [](const Mechanism& mech) {
            return "Mechanism(" + mech.name() + ")";
        });

    m.def("median_mechanism", &median_mechanism, py::arg("profile"));
    m.def("dictator", &dictator, py::arg("profile"), py::arg("agent_index"));
    m.def("fixed_point", &fixed_point, py::arg("position"));
    m.def("mean_mechanism", &mean_mechanism, py::arg("profile"));
    m.def("lrc", &lrc, py::arg("profile"));
    m.def("blrc", &blrc, py::arg("profile"));
    m.def("phantom_half", &phantom_half, py::arg("profile"));
    m.def("equal_spread", &equal_spread, py::arg("facility_count"));
    m.def("pec", &pec, py::arg("facility_count"));
    m.def("epec", &epec, py::arg("profile"), py::arg("facility_count"));
    m.def("fifths", &fifths, py::arg("profile"));

    py::class_<OptResult>(m, "OptResult")
        .def_readonly("placement", &OptResult::placement)
        .def_readonly("cost", &OptResult::cost)
        .def_readonly("objective", &OptResult::objective);

    m.def("opt_max_single", &opt_max_single, py::arg("profile"));
    m.def("opt_avg_single", &opt_avg_single, py::arg("profile"));
    m.def("opt_max_k", &opt_max_k, py::arg("profile"), py::arg("facilities"));
    m.def("opt_avg_k", &opt_avg_k, py::arg("profile"), py::arg("facilities"));
    m.def("optimal_for", &optimal_for, py::arg("profile"), py::arg("facilities"),
          py::arg("objective"));

    py::class_<ErrorReport>(m, "ErrorReport")
        .def_readonly("mechanism", &ErrorReport::mechanism)
        .def_readonly("objective", &ErrorReport::objective)
        .def_readonly("profile", &ErrorReport::profile)
        .def_readonly("mechanism_cost", &ErrorReport::mechanism_cost)
        .def_readonly("optimal_cost", &ErrorReport::optimal_cost)
        .def_readonly("error", &ErrorReport::error);

    py::class_<DeviationWitness>(m, "DeviationWitness")
        .def_readonly("profile", &DeviationWitness::profile)
        .def_readonly("agent", &DeviationWitness::agent)
        .def_readonly("misreport", &DeviationWitness::misreport)
        .def_readonly("truthful_cost", &DeviationWitness::truthful_cost)
        .def_readonly("deviated_cost", &DeviationWitness::deviated_cost)
        .def_readonly("gain", &DeviationWitness::gain);

    py::class_<FivePointDistribution>(m, "FivePointDistribution")
        .def_readonly("left", &FivePointDistribution::left)
        .def_readonly("center", &FivePointDistribution::center)
        .def_readonly("right", &FivePointDistribution::right)
        .def_readonly("p_zero", &FivePointDistribution::p_zero)
        .def_readonly("p_left", &FivePointDistribution::p_left)
        .def_readonly("p_center", &FivePointDistribution::p_center)
        .def_readonly("p_right", &FivePointDistribution::p_right)
        .def_readonly("p_one", &FivePointDistribution::p_one)
        .def("expected_location", &FivePointDistribution::expected_location)
        .def("to_randomized", &FivePointDistribution::to_randomized);

    py::class_<ScanOptions>(m, "ScanOptions")
        .def(py::init<>())
        .def_readwrite("resolution", &ScanOptions::resolution)
        .def_readwrite("refine_rounds", &ScanOptions::refine_rounds)
        .def_readwrite("max_evaluations", &ScanOptions::max_evaluations);

    py::class_<CheckOptions>(m, "CheckOptions")
        .def(py::init<>())
        .def_readwrite("resolution", &CheckOptions::resolution)
        .def_readwrite("coalition_size", &CheckOptions::coalition_size)
        .def_readwrite("max_evaluations", &CheckOptions::max_evaluations);

    m.def("additive_error", &additive_error, py::arg("mechanism"),
          py::arg("profile"), py::arg("objective"));
    m.def("worst_case_scan", &worst_case_scan, py::arg("mechanism"),
          py::arg("agents"), py::arg("objective"),
          py::arg("options") = ScanOptions{});
    m.def("truthfulness_check", &truthfulness_check, py::arg("mechanism"),
          py::arg("agents"), py::arg("options") = CheckOptions{});
    m.def("duplicate_reduction", &duplicate_reduction, py::arg("inner"),
          py::arg("copies"));
    m.def("clone_last_reduction", &clone_last_reduction, py::arg("inner"));
    m.def("five_point_project", &five_point_project, py::arg("distribution"),
          py::arg("profile"));
    m.def("symmetric_five_point_left_cost", &symmetric_five_point_left_cost,
          py::arg("p_ends"), py::arg("p_extremes"), py::arg("p_center"));
    m.def("randomized_lb_certificate", &randomized_lb_certificate,
          py::arg("grid_step"));
    m.def("deterministic_probe_single", &deterministic_probe_single,
          py::arg("mechanism"));
    m.def("deterministic_probe_k", &deterministic_probe_k, py::arg("mechanism"));
    m.def("known_error_bound", &known_error_bound, py::arg("spec"),
          py::arg("objective"));
}
