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

#include "nlshare/nlshare.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "nlshare/angle.hpp"
#include "nlshare/core_model.hpp"
#include "nlshare/errors.hpp"
#include "nlshare/experiments.hpp"
#include "nlshare/heatmap.hpp"
#include "nlshare/oracle_sim.hpp"
#include "nlshare/output_table.hpp"

struct nls_sequence {
  nlshare::AlphaSequence seq;
};

struct nls_table {
  nlshare::OutputTable table;
};

struct nls_sweep {
  nlshare::SweepSpec spec;
  std::vector<nlshare::SweepRecord> records;
};

namespace {

using namespace nlshare;

thread_local std::string g_last_error;

nls_status fail(nls_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <typename F>
nls_status guarded(F&& body) {
  g_last_error.clear();
  try {
    return body();
  } catch (const DomainError& e) {
    return fail(NLS_ERR_DOMAIN, e.what());
  } catch (const ConfigError& e) {
    return fail(NLS_ERR_CONFIG, e.what());
  } catch (const SizeError& e) {
    return fail(NLS_ERR_SIZE, e.what());
  } catch (const StructureError& e) {
    return fail(NLS_ERR_STRUCTURE, e.what());
  } catch (const IoError& e) {
    return fail(NLS_ERR_IO, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(NLS_ERR_CONFIG, e.what());
  } catch (const std::bad_alloc&) {
    return fail(NLS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(NLS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(NLS_ERR_INTERNAL, "unknown error");
  }
}

#define NLS_REQUIRE(ptr)                                              \
  do {                                                                \
    if ((ptr) == nullptr) {                                           \
      return fail(NLS_ERR_NULL_ARGUMENT, #ptr " must not be null");   \
    }                                                                 \
  } while (0)

NoiseModel to_noise(nls_noise noise) {
  switch (noise.kind) {
    case NLS_NOISE_NONE: return {NoiseModel::Kind::none, noise.p};
    case NLS_NOISE_DEPOLARIZING:
      return {NoiseModel::Kind::depolarizing, noise.p};
    case NLS_NOISE_DAMPING:
      return {NoiseModel::Kind::amplitude_damping, noise.p};
  }
  throw ConfigError("unknown noise kind " + std::to_string(noise.kind));
}

nls_noise from_noise(const NoiseModel& noise) {
  switch (noise.kind) {
    case NoiseModel::Kind::none: return {NLS_NOISE_NONE, noise.p};
    case NoiseModel::Kind::depolarizing:
      return {NLS_NOISE_DEPOLARIZING, noise.p};
    case NoiseModel::Kind::amplitude_damping:
      return {NLS_NOISE_DAMPING, noise.p};
  }
  return {NLS_NOISE_NONE, 0.0};
}

SweepParameter to_parameter(int p) {
  if (p < NLS_SWEEP_THETA || p > NLS_SWEEP_ALPHA1) {
    throw ConfigError("unknown sweep parameter " + std::to_string(p));
  }
  return static_cast<SweepParameter>(p);
}

Axis to_axis(const nls_axis& a) {
  return {to_parameter(a.parameter), a.lo, a.hi, a.points};
}

nls_axis from_axis(const Axis& a) {
  return {static_cast<int>(a.parameter), a.lo, a.hi, a.points};
}

ProtocolConfig to_config(const nls_network& net) {
  ProtocolConfig cfg;
  cfg.n = net.n;
  cfg.m = net.m;
  cfg.theta = net.theta;
  cfg.delta = net.delta;
  cfg.noise = to_noise(net.noise);
  return cfg;
}

Format to_format(const char* name) {
  if (name == nullptr) throw ConfigError("format must not be null");
  return parse_format(name);
}

nls_table* wrap(OutputTable table) {
  return new nls_table{std::move(table)};
}

}  // namespace

extern "C" {

const char* nls_version(void) { return NLSHARE_VERSION_STRING; }

const char* nls_last_error(void) { return g_last_error.c_str(); }

const char* nls_status_name(nls_status status) {
  switch (status) {
    case NLS_OK: return "ok";
    case NLS_ERR_DOMAIN: return "domain error";
    case NLS_ERR_CONFIG: return "config error";
    case NLS_ERR_SIZE: return "size error";
    case NLS_ERR_STRUCTURE: return "structure error";
    case NLS_ERR_IO: return "i/o error";
    case NLS_OUT_OF_REGIME: return "out of regime";
    case NLS_ERR_NULL_ARGUMENT: return "null argument";
    case NLS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

nls_status nls_parse_angle(const char* text, double* out) {
  NLS_REQUIRE(text);
  NLS_REQUIRE(out);
  return guarded([&] {
    *out = parse_angle(text);
    return NLS_OK;
  });
}

nls_status nls_concurrence_pure(double theta, double* out) {
  NLS_REQUIRE(out);
  return guarded([&] {
    *out = concurrence_pure(theta);
    return NLS_OK;
  });
}

nls_status nls_threshold_concurrence(int k, double* out) {
  NLS_REQUIRE(out);
  return guarded([&] {
    *out = threshold_concurrence(k);
    return NLS_OK;
  });
}

nls_status nls_max_supported_rounds(double c, int* rounds, int* unbounded) {
  NLS_REQUIRE(rounds);
  NLS_REQUIRE(unbounded);
  return guarded([&] {
    const std::optional<int> k = max_supported_rounds(c);
    *unbounded = k ? 0 : 1;
    *rounds = k ? *k : -1;
    return NLS_OK;
  });
}

nls_status nls_convention_delta(double theta, int convention, double* out) {
  NLS_REQUIRE(out);
  return guarded([&] {
    if (convention == NLS_DELTA_HALF_PI) {
      *out = convention_delta(theta, DeltaConvention::half_pi);
    } else if (convention == NLS_DELTA_QUARTER_PI) {
      *out = convention_delta(theta, DeltaConvention::quarter_pi);
    } else {
      throw ConfigError("convention must be half-pi or quarter-pi");
    }
    return NLS_OK;
  });
}

nls_status nls_alpha_lower_bound(int j, double theta, double delta,
                                 double cumprod, nls_noise noise,
                                 double* value, int* feasible,
                                 int* degenerate) {
  NLS_REQUIRE(value);
  NLS_REQUIRE(feasible);
  NLS_REQUIRE(degenerate);
  return guarded([&] {
    const AlphaBound b =
        alpha_lower_bound(j, theta, delta, cumprod, to_noise(noise));
    *value = b.value;
    *feasible = b.feasible;
    *degenerate = b.degenerate;
    return NLS_OK;
  });
}

nls_status nls_branch_factor(int j, double theta, double delta,
                             double alpha_j, double cumprod, nls_noise noise,
                             double* out) {
  NLS_REQUIRE(out);
  return guarded([&] {
    *out = closed_form_branch_factor(j, theta, delta, alpha_j, cumprod,
                                     to_noise(noise));
    return NLS_OK;
  });
}

nls_status nls_untouched_factor(double theta, double delta, nls_noise noise,
                                double* out) {
  NLS_REQUIRE(out);
  return guarded([&] {
    *out = untouched_branch_factor(theta, delta, to_noise(noise));
    return NLS_OK;
  });
}

nls_status nls_sequence_build(double theta, double delta, double epsilon,
                              double alpha1, int k, nls_noise noise,
                              nls_sequence** out) {
  NLS_REQUIRE(out);
  return guarded([&] {
    *out = new nls_sequence{build_alpha_sequence(theta, delta, epsilon,
                                                 alpha1, k, to_noise(noise))};
    return NLS_OK;
  });
}

nls_status nls_sequence_from_alphas(const double* alphas, size_t count,
                                    nls_sequence** out) {
  NLS_REQUIRE(alphas);
  NLS_REQUIRE(out);
  return guarded([&] {
    *out = new nls_sequence{AlphaSequence::from_alphas(
        std::vector<double>(alphas, alphas + count))};
    return NLS_OK;
  });
}

int nls_sequence_size(const nls_sequence* seq) {
  return seq ? seq->seq.size() : 0;
}

nls_status nls_sequence_get(const nls_sequence* seq, int round, double* alpha,
                            double* cumprod) {
  NLS_REQUIRE(seq);
  return guarded([&] {
    if (alpha) *alpha = seq->seq.alpha(round);
    if (cumprod) *cumprod = seq->seq.cumprod(round);
    return NLS_OK;
  });
}

void nls_sequence_destroy(nls_sequence* seq) { delete seq; }

nls_status nls_closed_form_s(const nls_network* net, const nls_sequence* seq,
                             int j, double tolerance, nls_bell_value* out) {
  NLS_REQUIRE(net);
  NLS_REQUIRE(seq);
  NLS_REQUIRE(out);
  return guarded([&] {
    const BellValue v = closed_form_s(net->n, net->m, j, net->theta,
                                      net->delta, seq->seq,
                                      to_noise(net->noise));
    *out = {v.bell.s,  v.bell.excess, v.bell.scale,
            v.i_n,     v.j_n,         v.branch,
            v.untouched, v.in_regime, v.violates(tolerance)};
    return v.in_regime ? NLS_OK
                       : fail(NLS_OUT_OF_REGIME,
                              "branch or untouched factor is not positive");
  });
}

nls_status nls_oracle_s(const nls_network* net, const nls_sequence* seq,
                        int j, nls_oracle_value* out) {
  NLS_REQUIRE(net);
  NLS_REQUIRE(seq);
  NLS_REQUIRE(out);
  return guarded([&] {
    const OracleValue v = oracle_s(to_config(*net), seq->seq, j);
    *out = {v.s, v.i_n, v.j_n};
    return NLS_OK;
  });
}

nls_status nls_full_tensor_s(const nls_network* net, const nls_sequence* seq,
                             int j, nls_oracle_value* out) {
  NLS_REQUIRE(net);
  NLS_REQUIRE(seq);
  NLS_REQUIRE(out);
  return guarded([&] {
    const OracleValue v = full_tensor_s(to_config(*net), seq->seq, j);
    *out = {v.s, v.i_n, v.j_n};
    return NLS_OK;
  });
}

nls_status nls_max_rounds(double theta, double delta, double epsilon,
                          double alpha1, nls_noise noise, int j_cap,
                          double tolerance, int* out) {
  NLS_REQUIRE(out);
  return guarded([&] {
    *out = max_rounds(theta, delta, epsilon, alpha1, to_noise(noise), j_cap,
                      tolerance);
    return NLS_OK;
  });
}

nls_status nls_unsharp_gammas(double theta, double omega, double epsilon,
                              int k, double* gammas, size_t capacity,
                              int* count) {
  NLS_REQUIRE(count);
  if (capacity > 0) NLS_REQUIRE(gammas);
  return guarded([&] {
    const UnsharpSequence u = unsharp_gamma_sequence(theta, omega, epsilon, k);
    *count = u.feasible_through;
    for (size_t i = 0; i < capacity && i < u.gammas.size(); ++i) {
      gammas[i] = u.gammas[i];
    }
    return NLS_OK;
  });
}

nls_status nls_unsharp_s(int j, double theta, double omega,
                         const double* gammas, size_t count, double* s,
                         double* excess) {
  NLS_REQUIRE(gammas);
  NLS_REQUIRE(s);
  return guarded([&] {
    const BellExcess v = unsharp_closed_form_s(
        j, theta, omega, std::span<const double>(gammas, count));
    *s = v.s;
    if (excess) *excess = v.excess;
    return NLS_OK;
  });
}

nls_status nls_table_create(const char* const* columns, size_t count,
                            nls_table** out) {
  NLS_REQUIRE(out);
  if (count > 0) NLS_REQUIRE(columns);
  return guarded([&] {
    std::vector<std::string> names;
    for (size_t i = 0; i < count; ++i) {
      if (columns[i] == nullptr) throw StructureError("null column name");
      names.emplace_back(columns[i]);
    }
    *out = wrap(OutputTable(std::move(names)));
    return NLS_OK;
  });
}

nls_status nls_table_append_row(nls_table* table, const nls_cell* cells,
                                size_t count) {
  NLS_REQUIRE(table);
  if (count > 0) NLS_REQUIRE(cells);
  return guarded([&] {
    std::vector<Cell> row;
    row.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      const nls_cell& c = cells[i];
      switch (c.type) {
        case NLS_CELL_EMPTY: row.emplace_back(std::monostate{}); break;
        case NLS_CELL_BOOL: row.emplace_back(c.integer != 0); break;
        case NLS_CELL_INT: row.emplace_back(c.integer); break;
        case NLS_CELL_REAL: row.emplace_back(c.real); break;
        case NLS_CELL_TEXT:
          row.emplace_back(std::string(c.text ? c.text : ""));
          break;
        default:
          throw StructureError("unknown cell type " + std::to_string(c.type));
      }
    }
    table->table.add_row(std::move(row));
    return NLS_OK;
  });
}

nls_status nls_table_set_metadata(nls_table* table, const char* key,
                                  const char* json_value) {
  NLS_REQUIRE(table);
  NLS_REQUIRE(key);
  NLS_REQUIRE(json_value);
  return guarded([&] {
    table->table.metadata()[key] = OutputTable::Metadata::parse(json_value);
    return NLS_OK;
  });
}

size_t nls_table_rows(const nls_table* table) {
  return table ? table->table.row_count() : 0;
}

nls_status nls_table_render(const nls_table* table, const char* format,
                            char** out) {
  NLS_REQUIRE(table);
  NLS_REQUIRE(out);
  return guarded([&] {
    const std::string text = render_table(table->table, to_format(format));
    char* buf = static_cast<char*>(std::malloc(text.size() + 1));
    if (buf == nullptr) throw std::bad_alloc();
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
    return NLS_OK;
  });
}

nls_status nls_table_write(const nls_table* table, const char* format,
                           const char* path) {
  NLS_REQUIRE(table);
  NLS_REQUIRE(path);
  return guarded([&] {
    emit_table(table->table, to_format(format), path);
    return NLS_OK;
  });
}

void nls_table_destroy(nls_table* table) { delete table; }

void nls_string_free(char* text) { std::free(text); }

nls_status nls_parse_axis(const char* text, nls_axis* out) {
  NLS_REQUIRE(text);
  NLS_REQUIRE(out);
  return guarded([&] {
    *out = from_axis(parse_axis(text));
    return NLS_OK;
  });
}

const char* nls_sweep_parameter_name(int parameter) {
  if (parameter < NLS_SWEEP_THETA || parameter > NLS_SWEEP_ALPHA1) {
    return "unknown";
  }
  return to_string(static_cast<SweepParameter>(parameter));
}

nls_status nls_default_sweep_spec(int which, nls_sweep_spec* out) {
  NLS_REQUIRE(out);
  return guarded([&] {
    SweepSpec spec;
    switch (which) {
      case NLS_SWEEP_ANGLES: spec = default_angle_sweep(); break;
      case NLS_SWEEP_DEPOLARIZING:
        spec = default_noise_sweep(NoiseModel::Kind::depolarizing);
        break;
      case NLS_SWEEP_DAMPING:
        spec = default_noise_sweep(NoiseModel::Kind::amplitude_damping);
        break;
      default:
        throw ConfigError("unknown default sweep " + std::to_string(which));
    }
    nls_sweep_spec s{};
    s.axis1 = from_axis(spec.axis1);
    s.has_axis2 = spec.axis2.has_value();
    if (spec.axis2) s.axis2 = from_axis(*spec.axis2);
    s.theta = spec.fixed.theta;
    s.delta = spec.fixed.delta;
    s.epsilon = spec.fixed.epsilon;
    s.alpha1 = spec.fixed.alpha1;
    s.noise = from_noise(spec.fixed.noise);
    s.convention = static_cast<int>(spec.delta_mode);
    s.round_cap = spec.round_cap;
    s.tolerance = spec.tolerance;
    *out = s;
    return NLS_OK;
  });
}

nls_status nls_sweep_run(const nls_sweep_spec* spec, int threads,
                         nls_sweep** out) {
  NLS_REQUIRE(spec);
  NLS_REQUIRE(out);
  return guarded([&] {
    SweepSpec s;
    s.axis1 = to_axis(spec->axis1);
    if (spec->has_axis2) s.axis2 = to_axis(spec->axis2);
    s.fixed.theta = spec->theta;
    s.fixed.delta = spec->delta;
    s.fixed.epsilon = spec->epsilon;
    s.fixed.alpha1 = spec->alpha1;
    s.fixed.noise = to_noise(spec->noise);
    if (spec->convention < NLS_DELTA_HALF_PI ||
        spec->convention > NLS_DELTA_EXPLICIT) {
      throw ConfigError("unknown delta convention");
    }
    s.delta_mode = static_cast<DeltaMode>(spec->convention);
    s.round_cap = spec->round_cap;
    s.tolerance = spec->tolerance;
    auto records = sweep_max_rounds(s, threads);
    *out = new nls_sweep{std::move(s), std::move(records)};
    return NLS_OK;
  });
}

size_t nls_sweep_size(const nls_sweep* sweep) {
  return sweep ? sweep->records.size() : 0;
}

nls_status nls_sweep_cell(const nls_sweep* sweep, size_t index,
                          double* value1, double* value2, int* max_rounds) {
  NLS_REQUIRE(sweep);
  if (index >= sweep->records.size()) {
    return fail(NLS_ERR_SIZE, "sweep cell index out of range");
  }
  const SweepRecord& r = sweep->records[index];
  if (value1) *value1 = r.value1;
  if (value2) *value2 = r.value2;
  if (max_rounds) *max_rounds = r.max_rounds;
  return NLS_OK;
}

nls_status nls_sweep_table(const nls_sweep* sweep, nls_table** out) {
  NLS_REQUIRE(sweep);
  NLS_REQUIRE(out);
  return guarded([&] {
    *out = wrap(sweep_table(sweep->spec, sweep->records));
    return NLS_OK;
  });
}

nls_status nls_sweep_write_svg(const nls_sweep* sweep, const char* path) {
  NLS_REQUIRE(sweep);
  NLS_REQUIRE(path);
  return guarded([&] {
    const SweepSpec& s = sweep->spec;
    HeatmapLabels labels;
    labels.y_axis = to_string(s.axis1.parameter);
    labels.x_axis = s.axis2 ? to_string(s.axis2->parameter) : "";
    labels.title = std::string("max rounds, noise ") +
                   to_string(s.fixed.noise.kind);
    render_heatmap(sweep->records, labels, s.round_cap, path);
    return NLS_OK;
  });
}

void nls_sweep_destroy(nls_sweep* sweep) { delete sweep; }

nls_status nls_compare_protocols(double theta, double epsilon, double alpha1,
                                 double omega, int k, double tolerance,
                                 nls_table** out) {
  NLS_REQUIRE(out);
  return guarded([&] {
    *out = wrap(comparison_table(
        compare_protocols(theta, epsilon, alpha1, omega, k, tolerance)));
    return NLS_OK;
  });
}

nls_status nls_tradeoff_report(int n_lo, int n_hi, int k_lo, int k_hi,
                               double epsilon, double alpha1,
                               double tolerance, nls_table** out,
                               int* frontier_ok) {
  NLS_REQUIRE(out);
  return guarded([&] {
    const TradeoffReport r =
        tradeoff_report(n_lo, n_hi, k_lo, k_hi, epsilon, alpha1, tolerance);
    if (frontier_ok) *frontier_ok = r.frontier_ok;
    *out = wrap(tradeoff_table(r));
    return NLS_OK;
  });
}

nls_status nls_verify(uint64_t seed, int samples, nls_table** out,
                      int* passed) {
  NLS_REQUIRE(out);
  return guarded([&] {
    const VerificationReport r = verify_closed_forms(seed, samples);
    if (passed) *passed = r.passed;
    *out = wrap(verification_table(r));
    return NLS_OK;
  });
}

}  // extern "C"
