#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cachelab/combinatorics.hpp"
#include "cachelab/converse.hpp"
#include "cachelab/error.hpp"
#include "cachelab/fds.hpp"
#include "cachelab/index_coding.hpp"
#include "cachelab/oracle.hpp"
#include "cachelab/placement.hpp"
#include "cachelab/rational.hpp"
#include "cachelab/schemes.hpp"

namespace cachelab::cli {
namespace {

// Sentinel for the ratio column outside t in [0..alpha-1].
constexpr const char* kNoRatio = "—";

struct RunConfig {
  int users = 0;
  int alpha = 0;
  int files_per_class = 0;  // 0: smallest F with N >= K
  std::optional<int> t;
  std::optional<std::string> gamma;
  std::string scheme = "selfish";
  std::optional<std::string> profile;
  int jobs = 1;
  std::uint64_t cap_demands = schemes::SimulationOptions{}.demand_cap;
  std::size_t cap_mais = index_coding::kDefaultMaisCap;
  std::string output;
  std::string format;
  bool decimals = false;
  std::optional<std::string> pi;
  std::optional<std::string> demand;
  std::optional<std::string> files;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

int parse_int(const std::string& text) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("expected an integer, got '" + text + "'");
  }
  if (used != text.size()) throw std::invalid_argument("expected an integer, got '" + text + "'");
  return value;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_int(item));
  return out;
}

FdsStructure make_structure(const RunConfig& config) {
  if (config.users < 1 || config.alpha < 1) {
    throw std::invalid_argument("--K and --alpha are required");
  }
  int files = config.files_per_class;
  if (files == 0) {
    if (config.alpha > config.users) throw std::invalid_argument("alpha must lie in [1..K]");
    const auto classes = binomial(config.users, config.alpha);
    files = static_cast<int>((config.users + classes - 1) / classes);
  }
  return FdsStructure(config.users, config.alpha, files);
}

std::vector<Rational> parse_profile(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_rational(item));
  return out;
}

// t from --t, or from --gamma as K * gamma when that is an integer.
std::optional<int> resolve_t(const RunConfig& config, const FdsStructure& structure) {
  if (config.t) return config.t;
  if (!config.gamma) return std::nullopt;
  const Rational t = parse_rational(*config.gamma) * structure.users();
  if (boost::multiprecision::denominator(t) != 1) {
    throw std::invalid_argument("K * gamma = " + to_string(t) + " is not an integer");
  }
  return boost::multiprecision::numerator(t).convert_to<int>();
}

Placement make_placement(const RunConfig& config, const FdsStructure& structure, int t) {
  if (config.scheme == "man") return schemes::man_placement(structure, t);
  if (config.scheme == "selfish") return schemes::selfish_symmetric_placement(structure, t);
  throw std::invalid_argument("unknown scheme '" + config.scheme + "'");
}

void emit(const RunConfig& config, std::ostream& out, const std::string& text) {
  if (config.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(config.output, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open output file '" + config.output + "'");
  file << text;
}

std::string decimal(const Rational& value) {
  std::ostringstream s;
  s << std::setprecision(17) << to_double(value);
  return s.str();
}

struct BoundRow {
  Rational t;
  Rational memory;
  Rational lower_bound;
  Rational man_load;
  std::optional<Rational> ratio;
};

int cmd_bound(const RunConfig& config, std::ostream& out) {
  const FdsStructure structure = make_structure(config);
  const std::string format = config.format.empty() ? "csv" : config.format;
  if (format != "csv" && format != "json") {
    throw std::invalid_argument("bound supports --format csv or json");
  }
  const int users = structure.users();
  const int alpha = structure.alpha();
  const Rational per_t = make_rational(structure.library_size(), users);

  std::vector<BoundRow> rows;
  if (config.gamma && !config.t) {
    const Rational gamma = parse_rational(*config.gamma);
    if (gamma < 0 || gamma > 1) throw std::invalid_argument("--gamma must lie in [0, 1]");
    const Rational memory = gamma * structure.library_size();
    BoundRow row{gamma * users, memory, converse::bound_curve(structure).at(memory),
                 converse::man_curve(users, structure.library_size()).at(memory), std::nullopt};
    if (row.t <= alpha - 1) row.ratio = row.lower_bound / row.man_load;
    rows.push_back(std::move(row));
  } else {
    const auto curve = converse::bound_curve(structure);
    for (int t = 0; t <= alpha; ++t) {
      if (config.t && *config.t != t) continue;
      BoundRow row{Rational(t), per_t * t, curve.corners()[static_cast<std::size_t>(t)].load,
                   make_rational(users - t, 1 + t), std::nullopt};
      if (t <= alpha - 1) row.ratio = row.lower_bound / row.man_load;
      rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::invalid_argument("--t must lie in [0..alpha]");
  }

  std::ostringstream text;
  if (format == "csv") {
    text << "K,alpha,F,t,M,R_LB,R_MAN,ratio";
    if (config.decimals) text << ",M_decimal,R_LB_decimal,R_MAN_decimal,ratio_decimal";
    text << "\n";
    for (const auto& row : rows) {
      text << users << ',' << alpha << ',' << structure.files_per_class() << ','
           << to_string(row.t) << ',' << to_string(row.memory) << ','
           << to_string(row.lower_bound) << ',' << to_string(row.man_load) << ','
           << (row.ratio ? to_string(*row.ratio) : kNoRatio);
      if (config.decimals) {
        text << ',' << decimal(row.memory) << ',' << decimal(row.lower_bound) << ','
             << decimal(row.man_load) << ',' << (row.ratio ? decimal(*row.ratio) : kNoRatio);
      }
      text << "\n";
    }
  } else {
    nlohmann::json rows_json = nlohmann::json::array();
    for (const auto& row : rows) {
      rows_json.push_back({
          {"t", to_string(row.t)},
          {"M", to_string(row.memory)},
          {"R_LB", to_string(row.lower_bound)},
          {"R_MAN", to_string(row.man_load)},
          {"ratio", row.ratio ? nlohmann::json(to_string(*row.ratio)) : nlohmann::json(nullptr)},
      });
    }
    nlohmann::json doc{{"K", users}, {"alpha", alpha}, {"F", structure.files_per_class()},
                       {"rows", rows_json}};
    text << doc.dump(2) << "\n";
  }
  emit(config, out, text.str());
  return kOk;
}

int cmd_simulate(const RunConfig& config, std::ostream& out) {
  const FdsStructure structure = make_structure(config);
  if (!config.format.empty() && config.format != "json") {
    throw std::invalid_argument("simulate supports --format json");
  }
  const schemes::SimulationOptions options{config.cap_demands, config.jobs};

  nlohmann::json doc{{"scheme", config.scheme},
                     {"K", structure.users()},
                     {"alpha", structure.alpha()},
                     {"F", structure.files_per_class()}};
  std::optional<Placement> placement;
  schemes::DeliveryAlgorithm delivery = schemes::greedy_clique_delivery;
  if (config.scheme == "profile") {
    if (!config.profile) throw std::invalid_argument("--scheme profile needs --profile");
    const auto x = parse_profile(*config.profile);
    placement = schemes::profile_placement(structure, x);
    nlohmann::json xs = nlohmann::json::array();
    for (const auto& v : x) xs.push_back(to_string(v));
    doc["profile"] = xs;
    doc["t"] = nullptr;
  } else {
    const auto t = resolve_t(config, structure);
    if (!t) throw std::invalid_argument("simulate needs --t or --gamma");
    placement = make_placement(config, structure, *t);
    if (config.scheme == "man") delivery = schemes::man_delivery;
    doc["t"] = *t;
  }
  const auto result = schemes::simulate_worst_case(*placement, delivery, options);
  doc["M"] = to_string(placement->memory_budget());
  doc["worst_case_load"] = to_string(result.worst_case_load);
  doc["decodable"] = result.all_decodable;
  doc["demands_evaluated"] = result.demands_evaluated;
  doc["worst_demand"] = result.worst_demand.to_string();
  emit(config, out, doc.dump(2) + "\n");
  return result.all_decodable ? kOk : kVerificationFailure;
}

int cmd_verify(const RunConfig& config, std::ostream& out) {
  const FdsStructure structure = make_structure(config);
  if (!config.format.empty() && config.format != "json") {
    throw std::invalid_argument("verify supports --format json");
  }
  oracle::VerificationOptions options;
  options.family_cap = config.cap_demands;
  options.mais_cap = config.cap_mais;
  const auto report = oracle::run_verification(structure, options);
  emit(config, out, report.to_json().dump(2) + "\n");
  return report.passed() ? kOk : kVerificationFailure;
}

DemandInstance parse_demand(const RunConfig& config, const FdsStructure& structure) {
  DemandInstance demand;
  if (config.pi && config.demand) throw std::invalid_argument("give --pi or --demand, not both");
  if (config.pi) {
    const Permutation pi(parse_int_list(*config.pi));
    demand.classes = converse::demand_from_circular(structure, pi);
    demand.provenance = pi;
  } else if (config.demand) {
    for (const auto& item : split(*config.demand, ',')) {
      std::vector<int> members;
      for (char c : item) {
        if (c < '1' || c > '9') throw std::invalid_argument("malformed class '" + item + "'");
        members.push_back(c - '0');
      }
      demand.classes.push_back(UserSet::of(members));
    }
  } else {
    throw std::invalid_argument("graph needs --pi or --demand");
  }
  demand.files = config.files ? parse_int_list(*config.files)
                              : std::vector<int>(demand.classes.size(), 1);
  demand.validate(structure);
  return demand;
}

int cmd_graph(const RunConfig& config, std::ostream& out) {
  const FdsStructure structure = make_structure(config);
  if (!config.format.empty() && config.format != "dot") {
    throw std::invalid_argument("graph supports --format dot");
  }
  const DemandInstance demand = parse_demand(config, structure);
  std::optional<index_coding::SideInfoGraph> graph;
  if (config.scheme == "profile" && config.profile) {
    graph = index_coding::build_graph(
        schemes::profile_placement(structure, parse_profile(*config.profile)), demand);
  } else if (const auto t = resolve_t(config, structure)) {
    const Placement placement = make_placement(config, structure, *t);
    graph = config.scheme == "man" ? index_coding::build_delivery_graph(placement, demand)
                                   : index_coding::build_graph(placement, demand);
  } else {
    graph = index_coding::build_graph(structure, demand);
  }
  emit(config, out, index_coding::to_dot(*graph));
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact bounds and simulations for selfish coded caching", "cachelab"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file")->envname("CACHELAB_CONFIG");

  RunConfig config;
  app.add_option("--K", config.users, "number of users");
  app.add_option("--alpha", config.alpha, "users interested in each file class");
  app.add_option("--F", config.files_per_class, "files per class (default: smallest with N >= K)");
  app.add_option("--t", config.t, "cache replication parameter");
  app.add_option("--gamma", config.gamma, "normalised memory M/N as p/q");
  app.add_option("--scheme", config.scheme, "placement scheme")
      ->check(CLI::IsMember({"man", "selfish", "profile"}));
  app.add_option("--profile", config.profile, "replication profile x_0,...,x_alpha as p/q values");
  app.add_option("--jobs", config.jobs, "worker threads for demand enumeration")
      ->check(CLI::PositiveNumber);
  app.add_option("--cap-demands", config.cap_demands, "limit on enumerated demands");
  app.add_option("--cap-mais", config.cap_mais, "limit on vertices for exhaustive MAIS");
  app.add_option("--output", config.output, "write results to this path");
  app.add_option("--format", config.format, "csv, json or dot")
      ->check(CLI::IsMember({"csv", "json", "dot"}));
  app.add_flag("--decimals", config.decimals, "append decimal columns to CSV output");
  app.add_option("--pi", config.pi, "circular permutation generating the demand, e.g. 1,2,3,4");
  app.add_option("--demand", config.demand, "requested classes, e.g. 123,234,134,124");
  app.add_option("--files", config.files, "requested file indices, e.g. 1,1,1,1");

  auto* bound = app.add_subcommand("bound", "lower-bound corner points vs the MAN curve");
  auto* simulate = app.add_subcommand("simulate", "worst-case load of a placement/delivery scheme");
  auto* verify = app.add_subcommand("verify", "run brute-force oracles against the formulas");
  auto* graph = app.add_subcommand("graph", "side-information graph of a demand in DOT format");
  for (auto* sub : {bound, simulate, verify, graph}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (bound->parsed()) return cmd_bound(config, out);
    if (simulate->parsed()) return cmd_simulate(config, out);
    if (verify->parsed()) return cmd_verify(config, out);
    if (graph->parsed()) return cmd_graph(config, out);
  } catch (const CapExceeded& e) {
    err << "cachelab: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const std::invalid_argument& e) {
    err << "cachelab: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::out_of_range& e) {
    err << "cachelab: " << e.what() << "\n";
    return kInvalidInput;
  }
  return kInvalidInput;
}

}  // namespace cachelab::cli
