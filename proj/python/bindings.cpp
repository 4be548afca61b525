#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "storagegame/analysis.hpp"
#include "storagegame/equilibrium.hpp"
#include "storagegame/power.hpp"
#include "storagegame/pricing.hpp"
#include "storagegame/scenario_file.hpp"
#include "storagegame/utility.hpp"

namespace py = pybind11;
using namespace storagegame;

namespace {

struct PyErrors {
  PyObject* base = nullptr;
  PyObject* parse = nullptr;
  PyObject* scenario = nullptr;
  PyObject* existence = nullptr;
  PyObject* numeric = nullptr;
  PyObject* io = nullptr;
};

PyErrors errors;

PyObject* new_error(py::module_& m, const char* name, py::tuple bases) {
  const std::string qualified = std::string("storagegame.") + name;
  PyObject* type = PyErr_NewException(qualified.c_str(), bases.ptr(), nullptr);
  if (!type) throw py::error_already_set();
  m.add_object(name, py::handle(type));
  return type;
}

void raise_with_field(PyObject* type, const char* what, const std::string& field) {
  py::object instance = py::reinterpret_steal<py::object>(PyObject_CallFunction(type, "s", what));
  if (!instance) return;
  instance.attr("field") = field;
  PyErr_SetObject(type, instance.ptr());
}

MixedProfile to_mixed(const std::vector<double>& probabilities) { return MixedProfile{probabilities}; }

}  // namespace

PYBIND11_MODULE(_storagegame, m) {
  m.doc() = "Mixed-strategy equilibria for energy storage customers";

  errors.base = new_error(m, "StorageGameError", py::make_tuple(py::handle(PyExc_Exception)));
  py::handle base(errors.base);
  errors.parse = new_error(m, "ParseError", py::make_tuple(base, py::handle(PyExc_ValueError)));
  errors.scenario = new_error(m, "ScenarioError", py::make_tuple(base, py::handle(PyExc_ValueError)));
  errors.existence = new_error(m, "NoProperEquilibriumError", py::make_tuple(base));
  errors.numeric = new_error(m, "NumericError", py::make_tuple(base, py::handle(PyExc_ArithmeticError)));
  errors.io = new_error(m, "IoError", py::make_tuple(base, py::handle(PyExc_OSError)));

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ScenarioError& e) {
      raise_with_field(errors.scenario, e.what(), e.field());
    } catch (const Error& e) {
      PyObject* type = errors.base;
      switch (e.kind()) {
        case ErrorKind::Parse: type = errors.parse; break;
        case ErrorKind::Validation: type = errors.scenario; break;
        case ErrorKind::Existence: type = errors.existence; break;
        case ErrorKind::Numeric: type = errors.numeric; break;
        case ErrorKind::Io: type = errors.io; break;
      }
      PyErr_SetString(type, e.what());
    }
  });

  py::enum_<Action>(m, "Action")
      .value("CHARGE", Action::Charge)
      .value("DISCHARGE", Action::Discharge);
  py::enum_<Theory>(m, "Theory").value("EUT", Theory::EUT).value("PT", Theory::PT);

  py::class_<Customer>(m, "Customer")
      .def(py::init([](double demand, double surplus, double sell_price) {
             return Customer{demand, surplus, sell_price};
           }),
           py::arg("demand_kwh"), py::arg("surplus_kwh"), py::arg("sell_price"))
      .def_readwrite("demand_kwh", &Customer::demand_kwh)
      .def_readwrite("surplus_kwh", &Customer::surplus_kwh)
      .def_readwrite("sell_price", &Customer::sell_price)
      .def("__repr__", [](const Customer& c) {
        std::ostringstream out;
        out << "Customer(demand_kwh=" << c.demand_kwh << ", surplus_kwh=" << c.surplus_kwh
            << ", sell_price=" << c.sell_price << ")";
        return out.str();
      });

  py::class_<PriceTier>(m, "PriceTier")
      .def(py::init([](double threshold, double price) { return PriceTier{threshold, price}; }),
           py::arg("threshold_kwh"), py::arg("unit_price"))
      .def_readwrite("threshold_kwh", &PriceTier::threshold_kwh)
      .def_readwrite("unit_price", &PriceTier::unit_price);

  py::class_<PricingScheme>(m, "PricingScheme")
      .def(py::init([](std::vector<PriceTier> tiers) { return PricingScheme{std::move(tiers)}; }),
           py::arg("tiers"))
      .def_readwrite("tiers", &PricingScheme::tiers)
      .def_static("reference_ladder", &PricingScheme::reference_ladder);

  py::class_<ZeroLoss>(m, "ZeroLoss").def(py::init<>());
  py::class_<LinearFractionLoss>(m, "LinearFractionLoss")
      .def(py::init([](double lambda) { return LinearFractionLoss{lambda}; }), py::arg("lambda_"))
      .def_readwrite("lambda_", &LinearFractionLoss::lambda);

  py::class_<GridConfig>(m, "GridConfig")
      .def(py::init([](double background, double beta, PricingScheme pricing, double alpha,
                       std::optional<double> cap, LossModel loss) {
             GridConfig grid;
             grid.background_load_kwh = background;
             grid.beta = beta;
             grid.pricing = std::move(pricing);
             grid.prelec_alpha = alpha;
             grid.price_cap = cap;
             grid.loss_model = loss;
             return grid;
           }),
           py::arg("background_load_kwh"), py::arg("beta"),
           py::arg("pricing") = PricingScheme::reference_ladder(), py::arg("prelec_alpha") = 1.0,
           py::arg("price_cap") = py::none(), py::arg("loss_model") = ZeroLoss{})
      .def_readwrite("background_load_kwh", &GridConfig::background_load_kwh)
      .def_readwrite("beta", &GridConfig::beta)
      .def_readwrite("price_cap", &GridConfig::price_cap)
      .def_readwrite("pricing", &GridConfig::pricing)
      .def_readwrite("loss_model", &GridConfig::loss_model)
      .def_readwrite("prelec_alpha", &GridConfig::prelec_alpha);

  py::class_<Scenario>(m, "Scenario")
      .def_property_readonly("customers", &Scenario::customers)
      .def_property_readonly("grid", &Scenario::grid)
      .def_property_readonly("num_players", &Scenario::num_players)
      .def("with_customers",
           [](const Scenario& s, std::vector<Customer> customers) {
             return validate_scenario(std::move(customers), s.grid());
           })
      .def("with_grid", [](const Scenario& s, GridConfig grid) {
        return validate_scenario(s.customers(), std::move(grid));
      });

  m.def("validate_scenario", &validate_scenario, py::arg("customers"), py::arg("grid"));
  m.def("parse_scenario", &parse_scenario, py::arg("text"), py::arg("source_name") = "<string>");
  m.def("load_scenario", &load_scenario, py::arg("path"));
  m.def("reference_scenario", &reference_scenario);

  m.def("lmp_price", &lmp_price, py::arg("generation_kwh"), py::arg("scheme"));
  m.def(
      "generation",
      [](const ActionProfile& profile, const Scenario& scenario) {
        const auto balance = generation(profile, scenario);
        py::dict out;
        out["generation_kwh"] = balance.generation_kwh;
        out["nominal_kwh"] = balance.nominal_kwh;
        out["deviation_kwh"] = balance.deviation_kwh;
        out["losses_kwh"] = balance.losses_kwh;
        return out;
      },
      py::arg("profile"), py::arg("scenario"));
  m.def("pure_utility", &pure_utility, py::arg("k"), py::arg("profile"), py::arg("scenario"));
  m.def("prelec_weight", &prelec_weight, py::arg("sigma"), py::arg("alpha"));
  m.def(
      "expected_utility",
      [](Theory theory, std::size_t k, const std::vector<double>& mixed, const Scenario& scenario) {
        return expected_utility(theory, k, to_mixed(mixed), payoff_table(scenario),
                                scenario.grid().prelec_alpha);
      },
      py::arg("theory"), py::arg("k"), py::arg("mixed"), py::arg("scenario"));

  py::class_<PlayerBounds>(m, "PlayerBounds")
      .def_readonly("lower", &PlayerBounds::lower)
      .def_readonly("upper", &PlayerBounds::upper)
      .def_readonly("value", &PlayerBounds::value)
      .def_readonly("satisfied", &PlayerBounds::satisfied);
  py::class_<ExistenceReport>(m, "ExistenceReport")
      .def_property_readonly("players",
                             [](const ExistenceReport& r) {
                               return std::vector<PlayerBounds>(r.players.begin(), r.players.end());
                             })
      .def_property_readonly("satisfied", &ExistenceReport::satisfied)
      .def("describe", &ExistenceReport::describe);
  m.def("check_existence", &check_existence, py::arg("scenario"));

  py::class_<EquilibriumResult>(m, "EquilibriumResult")
      .def_property_readonly("probabilities",
                             [](const EquilibriumResult& r) { return r.mixed.charge_probability; })
      .def_readonly("theory", &EquilibriumResult::theory)
      .def_readonly("indifference_residuals", &EquilibriumResult::indifference_residuals)
      .def_readonly("existence_satisfied", &EquilibriumResult::existence_satisfied)
      .def_readonly("is_proper", &EquilibriumResult::is_proper);
  m.def("solve_eut", &solve_eut, py::arg("scenario"));
  m.def("solve_pt", &solve_pt, py::arg("scenario"));
  m.def("solve", &solve, py::arg("theory"), py::arg("scenario"));

  py::class_<VerificationReport>(m, "VerificationReport")
      .def_readonly("max_gain", &VerificationReport::max_gain)
      .def_readonly("confirmed", &VerificationReport::confirmed);
  m.def("verify_equilibrium", &verify_equilibrium, py::arg("result"), py::arg("scenario"),
        py::arg("resolution") = 101);
  m.def("enumerate_pure_nash", &enumerate_pure_nash, py::arg("scenario"));

  m.def(
      "revenue",
      [](const std::vector<double>& mixed, const Scenario& s) { return revenue(to_mixed(mixed), s); },
      py::arg("mixed"), py::arg("scenario"));
  m.def(
      "expected_load",
      [](const std::vector<double>& mixed, const Scenario& s) {
        return expected_load(to_mixed(mixed), s);
      },
      py::arg("mixed"), py::arg("scenario"));

  py::class_<SweepSpec>(m, "SweepSpec")
      .def(py::init([](const std::string& parameter, double start, double stop, std::size_t steps,
                       std::vector<Theory> theories, bool couple) {
             SweepSpec spec;
             spec.parameter = parse_sweep_parameter(parameter);
             spec.start = start;
             spec.stop = stop;
             spec.steps = steps;
             spec.theories = std::move(theories);
             spec.couple_sell_prices = couple;
             return spec;
           }),
           py::arg("parameter"), py::arg("start"), py::arg("stop"), py::arg("steps"),
           py::arg("theories") = std::vector<Theory>{Theory::EUT, Theory::PT},
           py::arg("couple_sell_prices") = true)
      .def_property_readonly("parameter",
                             [](const SweepSpec& s) { return std::string(to_string(s.parameter)); })
      .def_readonly("start", &SweepSpec::start)
      .def_readonly("stop", &SweepSpec::stop)
      .def_readonly("steps", &SweepSpec::steps)
      .def("values", &SweepSpec::values);

  // Rows come back as plain dicts keyed like the CSV columns.
  m.def(
      "sweep",
      [](const SweepSpec& spec, const Scenario& scenario) {
        py::list out;
        for (const auto& row : sweep(spec, scenario))
          for (const auto& outcome : row.outcomes) {
            py::dict entry;
            entry["parameter"] = row.value;
            entry["theory"] = outcome.theory;
            entry["p1"] = outcome.solved ? py::cast(outcome.solved->p1) : py::none();
            entry["p2"] = outcome.solved ? py::cast(outcome.solved->p2) : py::none();
            entry["revenue"] = outcome.solved ? py::cast(outcome.solved->revenue) : py::none();
            entry["load"] = outcome.solved ? py::cast(outcome.solved->expected_load_kwh) : py::none();
            entry["exists1"] = outcome.exists1;
            entry["exists2"] = outcome.exists2;
            out.append(entry);
          }
        return out;
      },
      py::arg("spec"), py::arg("scenario"));
  m.def(
      "sweep_csv",
      [](const SweepSpec& spec, const Scenario& scenario) {
        std::ostringstream out;
        emit_csv(sweep(spec, scenario), out);
        return out.str();
      },
      py::arg("spec"), py::arg("scenario"));
}
