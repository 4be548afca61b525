#include "storagegame/scenario_file.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <toml.hpp>

namespace storagegame {

namespace {

constexpr std::string_view kReferenceScenario =
#include "storagegame/reference_scenario.inc"
    ;

void reject_unknown_keys(const toml::table& table, const std::set<std::string_view>& allowed,
                         const std::string& where) {
  for (const auto& [key, node] : table)
    if (!allowed.contains(key.str()))
      throw ParseError(where + ": unknown key '" + std::string(key.str()) + "'");
}

double number(const toml::table& table, std::string_view key, const std::string& where) {
  const auto* node = table.get(key);
  if (!node) throw ParseError(where + ": missing key '" + std::string(key) + "'");
  if (!node->is_number())
    throw ParseError(where + "." + std::string(key) + ": expected a number");
  return node->value<double>().value();
}

std::optional<double> optional_number(const toml::table& table, std::string_view key,
                                      const std::string& where) {
  if (!table.contains(key)) return std::nullopt;
  return number(table, key, where);
}

const toml::array& array_of_tables(const toml::table& root, std::string_view key) {
  const auto* array = root.get_as<toml::array>(key);
  if (!array || !array->is_array_of_tables())
    throw ParseError("missing array of tables [[" + std::string(key) + "]]");
  return *array;
}

GridConfig parse_grid(const toml::table& root) {
  const auto* grid_table = root.get_as<toml::table>("grid");
  if (!grid_table) throw ParseError("missing [grid] section");
  const auto& t = *grid_table;
  reject_unknown_keys(t,
                      {"background_load_kwh", "beta", "prelec_alpha", "price_cap", "loss_model",
                       "loss_lambda"},
                      "grid");
  GridConfig grid;
  grid.background_load_kwh = number(t, "background_load_kwh", "grid");
  grid.beta = number(t, "beta", "grid");
  grid.prelec_alpha = optional_number(t, "prelec_alpha", "grid").value_or(1.0);
  grid.price_cap = optional_number(t, "price_cap", "grid");

  std::string loss = "zero";
  if (const auto* node = t.get("loss_model")) {
    const auto name = node->value<std::string>();
    if (!name) throw ParseError("grid.loss_model: expected a string");
    loss = *name;
  }
  const auto lambda = optional_number(t, "loss_lambda", "grid");
  if (loss == "zero") {
    if (lambda && *lambda != 0.0)
      throw ParseError("grid.loss_lambda: only meaningful with loss_model = \"linear_fraction\"");
    grid.loss_model = ZeroLoss{};
  } else if (loss == "linear_fraction") {
    if (!lambda) throw ParseError("grid: loss_model \"linear_fraction\" requires loss_lambda");
    grid.loss_model = LinearFractionLoss{*lambda};
  } else {
    throw ParseError("grid.loss_model: unknown model '" + loss +
                     "' (expected \"zero\" or \"linear_fraction\")");
  }

  const auto& tiers = array_of_tables(root, "tiers");
  for (std::size_t i = 0; i < tiers.size(); ++i) {
    const auto& tier = *tiers[i].as_table();
    const std::string where = "tiers[" + std::to_string(i) + "]";
    reject_unknown_keys(tier, {"threshold", "price"}, where);
    grid.pricing.tiers.push_back({number(tier, "threshold", where), number(tier, "price", where)});
  }
  return grid;
}

std::vector<Customer> parse_customers(const toml::table& root) {
  std::vector<Customer> customers;
  const auto& entries = array_of_tables(root, "customers");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& entry = *entries[i].as_table();
    const std::string where = "customers[" + std::to_string(i) + "]";
    reject_unknown_keys(entry, {"demand", "surplus", "sell_price"}, where);
    customers.push_back({number(entry, "demand", where), number(entry, "surplus", where),
                         number(entry, "sell_price", where)});
  }
  return customers;
}

}  // namespace

Scenario parse_scenario(std::string_view text, std::string_view source_name) {
  toml::table root;
  try {
    root = toml::parse(text, source_name);
  } catch (const toml::parse_error& e) {
    std::ostringstream message;
    message << source_name << ':' << e.source().begin.line << ':' << e.source().begin.column
            << ": " << e.description();
    throw ParseError(message.str());
  }
  reject_unknown_keys(root, {"grid", "tiers", "customers"}, std::string(source_name));
  auto grid = parse_grid(root);
  auto customers = parse_customers(root);
  return validate_scenario(std::move(customers), std::move(grid));
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::Io, "cannot read scenario file '" + path.string() + "'");
  std::ostringstream text;
  text << file.rdbuf();
  return parse_scenario(text.str(), path.string());
}

std::string_view reference_scenario_text() noexcept { return kReferenceScenario; }

Scenario reference_scenario() { return parse_scenario(kReferenceScenario, "reference.toml"); }

}  // namespace storagegame
