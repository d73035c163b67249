// Copyright 2026 The nlshare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli_app.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nlshare/nlshare.h"

namespace nlshare::cli {
namespace {

using Json = nlohmann::ordered_json;

struct Failure {
  int code;
  std::string message;
};

int exit_code_for(nls_status status) {
  switch (status) {
    case NLS_ERR_CONFIG:
    case NLS_ERR_DOMAIN:
    case NLS_ERR_SIZE:
      return kExitUsage;
    default:
      return kExitRuntime;
  }
}

void check(nls_status status) {
  if (status == NLS_OK || status == NLS_OUT_OF_REGIME) return;
  throw Failure{exit_code_for(status),
                std::string(nls_status_name(status)) + ": " + nls_last_error()};
}

[[noreturn]] void usage(const std::string& message) {
  throw Failure{kExitUsage, message};
}

struct TableDeleter {
  void operator()(nls_table* t) const { nls_table_destroy(t); }
};
struct SequenceDeleter {
  void operator()(nls_sequence* s) const { nls_sequence_destroy(s); }
};
struct SweepDeleter {
  void operator()(nls_sweep* s) const { nls_sweep_destroy(s); }
};
using Table = std::unique_ptr<nls_table, TableDeleter>;
using Sequence = std::unique_ptr<nls_sequence, SequenceDeleter>;
using Sweep = std::unique_ptr<nls_sweep, SweepDeleter>;

double real(const std::string& name, const std::string& text) {
  double value = 0.0;
  if (nls_parse_angle(text.c_str(), &value) != NLS_OK) {
    usage("--" + name + ": " + nls_last_error());
  }
  return value;
}

int integer(const std::string& name, const std::string& text) {
  int value = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    usage("--" + name + ": expected an integer, got '" + text + "'");
  }
  return value;
}

std::uint64_t unsigned64(const std::string& name, const std::string& text) {
  std::uint64_t value = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    usage("--" + name + ": expected a non-negative integer, got '" + text +
          "'");
  }
  return value;
}

nls_noise noise_from(const std::string& kind, const std::string& p) {
  nls_noise noise{NLS_NOISE_NONE, 0.0};
  if (kind == "depolarizing") {
    noise.kind = NLS_NOISE_DEPOLARIZING;
  } else if (kind == "damping") {
    noise.kind = NLS_NOISE_DAMPING;
  } else if (kind != "none" && !kind.empty()) {
    usage("--noise must be none, depolarizing or damping, got '" + kind + "'");
  }
  if (!p.empty()) noise.p = real("p", p);
  return noise;
}

Table make_table(const std::vector<std::string>& columns) {
  std::vector<const char*> names;
  for (const auto& c : columns) names.push_back(c.c_str());
  nls_table* t = nullptr;
  check(nls_table_create(names.data(), names.size(), &t));
  return Table(t);
}

nls_cell int_cell(std::int64_t v) { return {NLS_CELL_INT, v, 0.0, nullptr}; }
nls_cell real_cell(double v) { return {NLS_CELL_REAL, 0, v, nullptr}; }
nls_cell bool_cell(bool v) { return {NLS_CELL_BOOL, v ? 1 : 0, 0.0, nullptr}; }
nls_cell text_cell(const char* v) { return {NLS_CELL_TEXT, 0, 0.0, v}; }
nls_cell empty_cell() { return {NLS_CELL_EMPTY, 0, 0.0, nullptr}; }

void append(nls_table* t, const std::vector<nls_cell>& cells) {
  check(nls_table_append_row(t, cells.data(), cells.size()));
}

void set_meta(nls_table* t, const std::string& key, const Json& value) {
  check(nls_table_set_metadata(t, key.c_str(), value.dump().c_str()));
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

// One string-valued option (or flag) of a subcommand; values stay as typed
// so they can be echoed and replayed exactly.
struct Param {
  std::string name;
  std::string text;
  bool flag_value = false;
  bool is_flag = false;
};

class Command {
 public:
  Command(CLI::App* app) : app_(app) {}

  CLI::App* app() const { return app_; }

  void option(const std::string& name, const std::string& fallback,
              const std::string& help) {
    auto& p = params_[name];
    p.name = name;
    p.text = fallback;
    order_.push_back(name);
    auto* opt = app_->add_option("--" + name, p.text, help);
    if (!fallback.empty()) opt->capture_default_str();
  }

  void flag(const std::string& name, const std::string& help) {
    auto& p = params_[name];
    p.name = name;
    p.is_flag = true;
    order_.push_back(name);
    app_->add_flag("--" + name, p.flag_value, help);
  }

  const std::string& get(const std::string& name) const {
    return params_.at(name).text;
  }
  bool on(const std::string& name) const {
    return params_.at(name).flag_value;
  }
  bool has(const std::string& name) const {
    auto it = params_.find(name);
    return it != params_.end() && !it->second.text.empty();
  }
  bool is_flag(const std::string& name) const {
    auto it = params_.find(name);
    return it != params_.end() && it->second.is_flag;
  }
  bool knows(const std::string& name) const { return params_.count(name); }

  Json echo() const {
    Json j = Json::object();
    for (const auto& name : order_) {
      const Param& p = params_.at(name);
      if (p.is_flag) {
        if (p.flag_value) j[name] = true;
      } else if (!p.text.empty()) {
        j[name] = p.text;
      }
    }
    return j;
  }

 private:
  CLI::App* app_;
  std::map<std::string, Param> params_;
  std::vector<std::string> order_;
};

struct Globals {
  std::string out;
  std::string format = "csv";
  std::string seed = "42";
  std::string config;
  std::string convention = "pi2";
  std::string tolerance = "1e-12";

  Json echo() const {
    return {{"format", format},
            {"seed", seed},
            {"convention", convention},
            {"tolerance", tolerance}};
  }
};

const char* const kGlobalValueOptions[] = {"--out", "--format", "--seed",
                                           "--config", "--convention",
                                           "--tolerance"};

bool is_global_value_option(const std::string& token) {
  for (const char* g : kGlobalValueOptions) {
    if (token == g) return true;
  }
  return false;
}

void add_protocol_options(Command& c) {
  c.option("theta", "", "state angle in radians, (0, pi/4]; accepts pi/8");
  c.option("concurrence", "", "set theta = asin(C)/2 instead of --theta");
  c.option("delta", "", "Bob's angle; default follows --convention");
  c.option("epsilon", "1e-10", "slack of the alpha recursion");
  c.option("alpha1", "1e-10", "first-round measurement probability");
  c.option("noise", "", "none | depolarizing | damping");
  c.option("p", "", "noise strength in [0, 1]");
}

class Cli {
 public:
  Cli() : app_("Sequential nonlocality sharing in star networks", "nlshare") {
    app_.set_version_flag("--version", nls_version());
    app_.require_subcommand(1);
    app_.fallthrough();
    app_.option_defaults()->multi_option_policy(
        CLI::MultiOptionPolicy::TakeLast);
    app_.add_option("--out", g_.out, "output file; stdout when omitted");
    app_.add_option("--format", g_.format, "csv | json | svg (svg: sweep only)")
        ->capture_default_str();
    app_.add_option("--seed", g_.seed, "random seed")->capture_default_str();
    app_.add_option("--config", g_.config,
                    "JSON file of option values; a previous output file "
                    "also works. Command-line flags take precedence");
    app_.add_option("--convention", g_.convention,
                    "canonical delta: pi2 (pi/2 - 2 theta) or pi4 "
                    "(pi/4 - 2 theta)")
        ->capture_default_str();
    app_.add_option("--tolerance", g_.tolerance,
                    "relative tolerance of the S > 2 decision")
        ->capture_default_str();

    auto& threshold = add("threshold", "threshold concurrence C(k), or the "
                                       "rounds a concurrence supports");
    threshold.option("k", "", "round count");
    threshold.option("concurrence", "", "concurrence in [0, 1]");

    auto& sequence = add("sequence", "construct the alpha sequence");
    add_protocol_options(sequence);
    sequence.option("k", "5", "rounds to construct");

    auto& svalue = add("svalue", "Bell value S for m of n chained branches");
    add_protocol_options(svalue);
    svalue.option("n", "1", "branch count");
    svalue.option("m", "", "chained branches (default n)");
    svalue.option("j", "1", "round");
    svalue.option("alphas", "", "explicit comma-separated alphas");
    svalue.flag("oracle", "also evaluate the density-matrix references");

    auto& rounds = add("max-rounds", "number of leading violating rounds");
    add_protocol_options(rounds);
    rounds.option("cap", "10", "largest round scanned");

    auto& sweep = add("sweep", "max-rounds grid over one or two parameters");
    add_protocol_options(sweep);
    sweep.option("preset", "", "angles | depolarizing | damping (angles without --axis1)");
    sweep.option("axis1", "", "name:lo:hi:points, e.g. theta:0:pi/4:181");
    sweep.option("axis2", "", "second axis, same syntax");
    sweep.option("cap", "", "largest round scanned (default 8)");
    sweep.option("threads", "0", "worker threads; 0 uses all cores");
    sweep.flag("both-conventions",
               "write _pi2 and _pi4 variants of --out");

    auto& compare = add("compare", "probabilistic projective vs unsharp");
    compare.option("theta", "pi/4-0.01", "state angle");
    compare.option("epsilon", "1e-2", "slack of both recursions");
    compare.option("alpha1", "1e-10", "first-round probability");
    compare.option("omega", "pi/4*1e-7", "unsharp protocol angle");
    compare.option("k", "5", "rounds");

    auto& tradeoff = add("tradeoff", "depth-breadth frontier at C = C(k)");
    tradeoff.option("n-min", "2", "smallest n");
    tradeoff.option("n-max", "6", "largest n");
    tradeoff.option("k-min", "2", "smallest k");
    tradeoff.option("k-max", "5", "largest k");
    tradeoff.option("epsilon", "1e-10", "slack of the alpha recursion");
    tradeoff.option("alpha1", "1e-8", "first-round probability");

    auto& verify = add("verify", "closed forms against the oracles");
    verify.option("samples", "200", "random tuples per noise model");
  }

  int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    try {
      inject_config(args);
      std::reverse(args.begin(), args.end());
      app_.parse(args);
    } catch (const CLI::ParseError& e) {
      const int code = app_.exit(e, out, err);
      return code == 0 ? kExitOk : kExitUsage;
    } catch (const Failure& f) {
      err << "error: " << f.message << "\n";
      return f.code;
    }

    try {
      for (auto& [name, cmd] : commands_) {
        if (cmd.app()->parsed()) return dispatch(name, cmd, out);
      }
      usage("no subcommand given");
    } catch (const Failure& f) {
      err << "error: " << f.message << "\n";
      return f.code;
    }
  }

 private:
  Command& add(const std::string& name, const std::string& help) {
    CLI::App* sub = app_.add_subcommand(name, help);
    return commands_.emplace(name, Command(sub)).first->second;
  }

  static Json load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{kExitUsage, "cannot read config file " + path};
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    try {
      if (!text.empty() && text.front() == '#') {
        // CSV output: metadata lives in leading '# key: value' lines.
        Json meta = Json::object();
        for (const std::string& line : split(text, '\n')) {
          if (line.rfind("# ", 0) != 0) break;
          const auto colon = line.find(": ");
          if (colon == std::string::npos) continue;
          meta[line.substr(2, colon - 2)] = Json::parse(line.substr(colon + 2));
        }
        return meta;
      }
      Json j = Json::parse(text);
      if (j.contains("metadata")) return j["metadata"];
      return j;
    } catch (const nlohmann::json::exception& e) {
      throw Failure{kExitUsage, "config file " + path + ": " + e.what()};
    }
  }

  static std::string token_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
      std::string joined;
      for (const auto& item : v) {
        if (!joined.empty()) joined += ',';
        joined += token_text(item);
      }
      return joined;
    }
    return v.dump();
  }

  // Expands --config into ordinary tokens placed ahead of the user's own,
  // so that later command-line values win.
  void inject_config(std::vector<std::string>& args) {
    std::string path;
    std::size_t sub_pos = args.size();
    for (std::size_t i = 0; i < args.size(); ++i) {
      const std::string& a = args[i];
      if (a == "--config" && i + 1 < args.size()) {
        path = args[i + 1];
      } else if (a.rfind("--config=", 0) == 0) {
        path = a.substr(9);
      }
      if (is_global_value_option(a)) {
        ++i;
        continue;
      }
      if (sub_pos == args.size() && commands_.count(a)) sub_pos = i;
    }
    if (path.empty()) return;

    const Json cfg = load_config(path);
    if (!cfg.is_object()) usage("config file must hold a JSON object");
    const Json options = cfg.contains("options") ? cfg["options"] : cfg;
    if (!options.is_object()) usage("config options must be an object");

    std::string command;
    if (sub_pos < args.size()) {
      command = args[sub_pos];
    } else if (cfg.contains("command") && cfg["command"].is_string()) {
      command = cfg["command"].get<std::string>();
      if (!commands_.count(command)) usage("unknown command in config");
      args.insert(args.begin(), command);
      sub_pos = 0;
    } else {
      return;  // CLI11 reports the missing subcommand
    }
    const Command& cmd = commands_.at(command);

    std::vector<std::string> global_tokens;
    std::vector<std::string> local_tokens;
    for (const auto& [key, value] : options.items()) {
      if (key == "out" || key == "config") continue;
      if (key == "format" || key == "seed" || key == "convention" ||
          key == "tolerance") {
        global_tokens.push_back("--" + key);
        global_tokens.push_back(token_text(value));
      } else if (cmd.is_flag(key)) {
        if (value.is_boolean() ? value.get<bool>() : token_text(value) == "true") {
          local_tokens.push_back("--" + key);
        }
      } else {
        // Unknown keys reach CLI11 and are rejected there.
        local_tokens.push_back("--" + key);
        local_tokens.push_back(token_text(value));
      }
    }
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(sub_pos) + 1,
                local_tokens.begin(), local_tokens.end());
    args.insert(args.begin(), global_tokens.begin(), global_tokens.end());
  }

  double tolerance() const { return real("tolerance", g_.tolerance); }

  int convention() const {
    if (g_.convention == "pi2") return NLS_DELTA_HALF_PI;
    if (g_.convention == "pi4") return NLS_DELTA_QUARTER_PI;
    usage("--convention must be pi2 or pi4, got '" + g_.convention + "'");
  }

  static double theta_of(const Command& c) {
    if (c.has("theta") && c.has("concurrence")) {
      usage("give either --theta or --concurrence, not both");
    }
    if (c.has("theta")) return real("theta", c.get("theta"));
    if (c.has("concurrence")) {
      const double conc = real("concurrence", c.get("concurrence"));
      if (!(conc >= 0.0 && conc <= 1.0)) {
        usage("--concurrence must lie in [0, 1]");
      }
      return std::asin(conc) / 2;
    }
    usage("--theta or --concurrence is required");
  }

  double delta_of(const Command& c, double theta) const {
    if (c.has("delta")) return real("delta", c.get("delta"));
    double delta = 0.0;
    check(nls_convention_delta(theta, convention(), &delta));
    return delta;
  }

  Json options_echo(const Command& c) const {
    Json j = g_.echo();
    const Json local = c.echo();
    for (const auto& [k, v] : local.items()) j[k] = v;
    return j;
  }

  void emit(nls_table* table, const std::string& name, const Json& options,
            const std::string& path, std::ostream& out) const {
    set_meta(table, "command", name);
    set_meta(table, "options", options);
    if (path.empty()) {
      char* text = nullptr;
      check(nls_table_render(table, g_.format.c_str(), &text));
      out << text;
      nls_string_free(text);
    } else {
      check(nls_table_write(table, g_.format.c_str(), path.c_str()));
    }
  }

  int dispatch(const std::string& name, const Command& c, std::ostream& out) {
    if (g_.format != "csv" && g_.format != "json" && g_.format != "svg") {
      usage("--format must be csv, json or svg, got '" + g_.format + "'");
    }
    if (g_.format == "svg") {
      if (name != "sweep") usage("svg output is only available for sweep");
      if (g_.out.empty()) usage("svg output needs --out");
    }
    if (name == "threshold") return cmd_threshold(c, out);
    if (name == "sequence") return cmd_sequence(c, out);
    if (name == "svalue") return cmd_svalue(c, out);
    if (name == "max-rounds") return cmd_max_rounds(c, out);
    if (name == "sweep") return cmd_sweep(c, out);
    if (name == "compare") return cmd_compare(c, out);
    if (name == "tradeoff") return cmd_tradeoff(c, out);
    return cmd_verify(c, out);
  }

  Table base_table(const std::vector<std::string>& columns,
                   const std::string& generator) const {
    Table t = make_table(columns);
    set_meta(t.get(), "tool", "nlshare");
    set_meta(t.get(), "version", nls_version());
    set_meta(t.get(), "generator", generator);
    return t;
  }

  int cmd_threshold(const Command& c, std::ostream& out) {
    if (c.has("k") == c.has("concurrence")) {
      usage("threshold needs exactly one of --k or --concurrence");
    }
    Table t;
    if (c.has("k")) {
      const int k = integer("k", c.get("k"));
      double value = 0.0;
      check(nls_threshold_concurrence(k, &value));
      t = base_table({"k", "C_k"}, "threshold");
      append(t.get(), {int_cell(k), real_cell(value)});
    } else {
      const double conc = real("concurrence", c.get("concurrence"));
      int rounds = 0, unbounded = 0;
      check(nls_max_supported_rounds(conc, &rounds, &unbounded));
      t = base_table({"concurrence", "max_supported_rounds"}, "threshold");
      append(t.get(), {real_cell(conc), unbounded ? text_cell("unbounded")
                                                  : int_cell(rounds)});
    }
    emit(t.get(), "threshold", options_echo(c), g_.out, out);
    return kExitOk;
  }

  int cmd_sequence(const Command& c, std::ostream& out) {
    const double theta = theta_of(c);
    const double delta = delta_of(c, theta);
    const int k = integer("k", c.get("k"));
    nls_sequence* raw = nullptr;
    check(nls_sequence_build(theta, delta, real("epsilon", c.get("epsilon")),
                             real("alpha1", c.get("alpha1")), k,
                             noise_from(c.get("noise"), c.get("p")), &raw));
    Sequence seq(raw);
    Table t = base_table({"j", "alpha", "P"}, "sequence");
    set_meta(t.get(), "theta", theta);
    set_meta(t.get(), "delta", delta);
    set_meta(t.get(), "requested_rounds", k);
    set_meta(t.get(), "feasible_through", nls_sequence_size(seq.get()));
    for (int j = 1; j <= nls_sequence_size(seq.get()); ++j) {
      double alpha = 0.0, cumprod = 0.0;
      check(nls_sequence_get(seq.get(), j, &alpha, &cumprod));
      append(t.get(), {int_cell(j), real_cell(alpha), real_cell(cumprod)});
    }
    emit(t.get(), "sequence", options_echo(c), g_.out, out);
    return kExitOk;
  }

  int cmd_svalue(const Command& c, std::ostream& out) {
    nls_network net{};
    net.n = integer("n", c.get("n"));
    net.m = c.has("m") ? integer("m", c.get("m")) : net.n;
    net.theta = theta_of(c);
    net.delta = delta_of(c, net.theta);
    net.noise = noise_from(c.get("noise"), c.get("p"));
    const int j = integer("j", c.get("j"));

    nls_sequence* raw = nullptr;
    if (c.has("alphas")) {
      std::vector<double> alphas;
      for (const auto& part : split(c.get("alphas"), ',')) {
        alphas.push_back(real("alphas", part));
      }
      check(nls_sequence_from_alphas(alphas.data(), alphas.size(), &raw));
    } else {
      check(nls_sequence_build(net.theta, net.delta,
                               real("epsilon", c.get("epsilon")),
                               real("alpha1", c.get("alpha1")), j, net.noise,
                               &raw));
    }
    Sequence seq(raw);

    nls_bell_value v{};
    check(nls_closed_form_s(&net, seq.get(), j, tolerance(), &v));
    std::vector<std::string> columns{"n", "m", "j", "S", "excess", "I_n",
                                     "J_n", "T", "U", "in_regime",
                                     "violates"};
    std::vector<nls_cell> row{int_cell(net.n), int_cell(net.m), int_cell(j),
                              real_cell(v.s), real_cell(v.excess),
                              real_cell(v.i_n), real_cell(v.j_n),
                              real_cell(v.branch), real_cell(v.untouched),
                              bool_cell(v.in_regime), bool_cell(v.violates)};
    if (c.on("oracle")) {
      nls_oracle_value o{};
      check(nls_oracle_s(&net, seq.get(), j, &o));
      columns.insert(columns.end(), {"S_oracle", "S_tensor"});
      row.push_back(real_cell(o.s));
      if (net.n <= 3) {
        nls_oracle_value f{};
        check(nls_full_tensor_s(&net, seq.get(), j, &f));
        row.push_back(real_cell(f.s));
      } else {
        row.push_back(empty_cell());
      }
    }
    Table t = base_table(columns, "svalue");
    set_meta(t.get(), "theta", net.theta);
    set_meta(t.get(), "delta", net.delta);
    append(t.get(), row);
    emit(t.get(), "svalue", options_echo(c), g_.out, out);
    return kExitOk;
  }

  int cmd_max_rounds(const Command& c, std::ostream& out) {
    const double theta = theta_of(c);
    const double delta = delta_of(c, theta);
    int rounds = 0;
    check(nls_max_rounds(theta, delta, real("epsilon", c.get("epsilon")),
                         real("alpha1", c.get("alpha1")),
                         noise_from(c.get("noise"), c.get("p")),
                         integer("cap", c.get("cap")), tolerance(), &rounds));
    double conc = 0.0;
    check(nls_concurrence_pure(theta, &conc));
    Table t = base_table({"theta", "delta", "concurrence", "max_rounds"},
                         "max-rounds");
    append(t.get(), {real_cell(theta), real_cell(delta), real_cell(conc),
                     int_cell(rounds)});
    emit(t.get(), "max-rounds", options_echo(c), g_.out, out);
    return kExitOk;
  }

  nls_sweep_spec sweep_spec(const Command& c, int conv) const {
    nls_sweep_spec spec{};
    std::string preset = c.get("preset");
    if (preset.empty() && !c.has("axis1")) preset = "angles";
    if (!preset.empty()) {
      int which = NLS_SWEEP_ANGLES;
      if (preset == "depolarizing") {
        which = NLS_SWEEP_DEPOLARIZING;
      } else if (preset == "damping") {
        which = NLS_SWEEP_DAMPING;
      } else if (preset != "angles") {
        usage("--preset must be angles, depolarizing or damping");
      }
      check(nls_default_sweep_spec(which, &spec));
    } else {
      check(nls_default_sweep_spec(NLS_SWEEP_ANGLES, &spec));
      spec.has_axis2 = 0;
      spec.convention = conv;
    }
    if (c.has("axis1")) check(nls_parse_axis(c.get("axis1").c_str(), &spec.axis1));
    if (c.has("axis2")) {
      check(nls_parse_axis(c.get("axis2").c_str(), &spec.axis2));
      spec.has_axis2 = 1;
    }
    if (c.has("concurrence") || c.has("theta")) spec.theta = theta_of(c);
    spec.epsilon = real("epsilon", c.get("epsilon"));
    spec.alpha1 = real("alpha1", c.get("alpha1"));
    if (c.has("noise")) spec.noise.kind = noise_from(c.get("noise"), "").kind;
    if (c.has("p")) spec.noise.p = real("p", c.get("p"));
    if (c.has("cap")) spec.round_cap = integer("cap", c.get("cap"));
    spec.tolerance = tolerance();

    const bool delta_axis =
        spec.axis1.parameter == NLS_SWEEP_DELTA ||
        (spec.has_axis2 && spec.axis2.parameter == NLS_SWEEP_DELTA);
    if (c.has("delta") || delta_axis) {
      spec.convention = NLS_DELTA_EXPLICIT;
      if (c.has("delta")) spec.delta = real("delta", c.get("delta"));
    } else {
      spec.convention = conv;
    }
    return spec;
  }

  void run_sweep(const Command& c, int conv, const Json& options,
                 const std::string& path, std::ostream& out) {
    const nls_sweep_spec spec = sweep_spec(c, conv);
    nls_sweep* raw = nullptr;
    check(nls_sweep_run(&spec, integer("threads", c.get("threads")), &raw));
    Sweep sweep(raw);
    if (g_.format == "svg") {
      check(nls_sweep_write_svg(sweep.get(), path.c_str()));
      return;
    }
    nls_table* t = nullptr;
    check(nls_sweep_table(sweep.get(), &t));
    Table table(t);
    emit(table.get(), "sweep", options, path, out);
  }

  int cmd_sweep(const Command& c, std::ostream& out) {
    if (!c.on("both-conventions")) {
      run_sweep(c, convention(), options_echo(c), g_.out, out);
      return kExitOk;
    }
    if (g_.out.empty()) usage("--both-conventions needs --out");
    const std::filesystem::path base(g_.out);
    for (const char* conv : {"pi2", "pi4"}) {
      std::filesystem::path path = base.parent_path() /
                                   (base.stem().string() + "_" + conv +
                                    base.extension().string());
      Json options = options_echo(c);
      options["convention"] = conv;
      options.erase("both-conventions");
      run_sweep(c, std::string(conv) == "pi2" ? NLS_DELTA_HALF_PI
                                              : NLS_DELTA_QUARTER_PI,
                options, path.string(), out);
    }
    return kExitOk;
  }

  int cmd_compare(const Command& c, std::ostream& out) {
    nls_table* t = nullptr;
    check(nls_compare_protocols(
        real("theta", c.get("theta")), real("epsilon", c.get("epsilon")),
        real("alpha1", c.get("alpha1")), real("omega", c.get("omega")),
        integer("k", c.get("k")), tolerance(), &t));
    Table table(t);
    emit(table.get(), "compare", options_echo(c), g_.out, out);
    return kExitOk;
  }

  int cmd_tradeoff(const Command& c, std::ostream& out) {
    nls_table* t = nullptr;
    int ok = 0;
    check(nls_tradeoff_report(
        integer("n-min", c.get("n-min")), integer("n-max", c.get("n-max")),
        integer("k-min", c.get("k-min")), integer("k-max", c.get("k-max")),
        real("epsilon", c.get("epsilon")), real("alpha1", c.get("alpha1")),
        tolerance(), &t, &ok));
    Table table(t);
    emit(table.get(), "tradeoff", options_echo(c), g_.out, out);
    return ok ? kExitOk : kExitRuntime;
  }

  int cmd_verify(const Command& c, std::ostream& out) {
    nls_table* t = nullptr;
    int passed = 0;
    check(nls_verify(unsigned64("seed", g_.seed),
                     integer("samples", c.get("samples")), &t, &passed));
    Table table(t);
    emit(table.get(), "verify", options_echo(c), g_.out, out);
    return passed ? kExitOk : kExitRuntime;
  }

  CLI::App app_;
  Globals g_;
  std::map<std::string, Command> commands_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  Cli cli;
  return cli.run(args, out, err);
}

}  // namespace nlshare::cli
