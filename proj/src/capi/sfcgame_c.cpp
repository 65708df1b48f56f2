#include "sfcgame/sfcgame.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "sfcgame/harness.hpp"

struct sfc_config {
  sfcgame::SimulationConfig value;
};

struct sfc_graph {
  sfcgame::NetworkGraph value;
};

struct sfc_run {
  sfcgame::RunResult value;
};

struct sfc_taguchi {
  sfcgame::TaguchiResult value;
};

namespace {

thread_local std::string g_last_error;

sfc_status fail(sfc_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

// Runs f, mapping library exceptions onto status codes.
template <typename F>
sfc_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return SFC_OK;
  } catch (const sfcgame::ConfigError& e) {
    return fail(SFC_ERR_CONFIG, e.what());
  } catch (const sfcgame::NoPathError& e) {
    return fail(SFC_ERR_NO_PATH, e.what());
  } catch (const sfcgame::IllegalTransitionError& e) {
    return fail(SFC_ERR_ILLEGAL_TRANSITION, e.what());
  } catch (const sfcgame::IoError& e) {
    return fail(SFC_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SFC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SFC_ERR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

bool to_algorithm(sfc_algorithm a, sfcgame::Algorithm& out) {
  switch (a) {
    case SFC_ALGORITHM_PGRA: out = sfcgame::Algorithm::Pgra; return true;
    case SFC_ALGORITHM_VITERBI: out = sfcgame::Algorithm::Viterbi; return true;
    case SFC_ALGORITHM_GREEDY: out = sfcgame::Algorithm::Greedy; return true;
  }
  return false;
}

bool to_format(sfc_format f, sfcgame::Format& out) {
  switch (f) {
    case SFC_FORMAT_CSV: out = sfcgame::Format::Csv; return true;
    case SFC_FORMAT_JSON: out = sfcgame::Format::Json; return true;
  }
  return false;
}

sfc_algorithm from_algorithm(sfcgame::Algorithm a) {
  switch (a) {
    case sfcgame::Algorithm::Pgra: return SFC_ALGORITHM_PGRA;
    case sfcgame::Algorithm::Viterbi: return SFC_ALGORITHM_VITERBI;
    case sfcgame::Algorithm::Greedy: return SFC_ALGORITHM_GREEDY;
  }
  return SFC_ALGORITHM_PGRA;
}

std::string path_or_stdout(const char* path) { return path ? path : "-"; }

sfc_status invalid(const char* what) { return fail(SFC_ERR_INVALID_ARGUMENT, what); }

template <typename Emit>
sfc_status emit_run(const sfc_run* run, sfc_format format, const char* path, Emit emit) {
  if (!run) return invalid("run is null");
  sfcgame::Format f;
  if (!to_format(format, f)) return invalid("unknown format");
  return guarded([&] {
    sfcgame::write_output(path_or_stdout(path),
                          [&](std::ostream& os) { emit(run->value, f, os); });
  });
}

template <typename Run>
sfc_status start_run(const sfc_config* config, sfc_algorithm algorithm, sfc_run** out, Run run) {
  if (!config || !out) return invalid("config and out must not be null");
  sfcgame::Algorithm a;
  if (!to_algorithm(algorithm, a)) return invalid("unknown algorithm");
  *out = nullptr;
  return guarded([&] { *out = new sfc_run{run(config->value, a)}; });
}

std::vector<int> levels(const int* values, std::size_t count, std::vector<int> fallback) {
  if (!values) return fallback;
  return std::vector<int>(values, values + count);
}

}  // namespace

extern "C" {

const char* sfc_last_error(void) { return g_last_error.c_str(); }

const char* sfc_version(void) { return "1.0.0"; }

void sfc_string_free(char* s) { delete[] s; }

sfc_status sfc_config_create(sfc_config** out) {
  if (!out) return invalid("out is null");
  return guarded([&] { *out = new sfc_config{}; });
}

sfc_status sfc_config_load(const char* path, sfc_config** out) {
  if (!path || !out) return invalid("path and out must not be null");
  *out = nullptr;
  return guarded([&] { *out = new sfc_config{sfcgame::SimulationConfig::load(path)}; });
}

sfc_status sfc_config_parse(const char* json_text, sfc_config** out) {
  if (!json_text || !out) return invalid("json_text and out must not be null");
  *out = nullptr;
  return guarded([&] { *out = new sfc_config{sfcgame::SimulationConfig::from_json(json_text)}; });
}

sfc_status sfc_config_set_int(sfc_config* config, const char* key, long value) {
  if (!config || !key) return invalid("config and key must not be null");
  return guarded([&] {
    sfcgame::SimulationConfig c = config->value;
    const std::string k = key;
    const int v = static_cast<int>(value);
    if (value < 0) throw sfcgame::ConfigError("'" + k + "' must not be negative");
    if (k == "nodes") c.set_node_count(v);
    else if (k == "d") c.game.placement.d = v;
    else if (k == "beam")
      c.game.placement.beam = value == 0 ? sfcgame::kUnbounded : static_cast<std::size_t>(value);
    else if (k == "requests") c.requests = v;
    else if (k == "slots") c.slots = v;
    else if (k == "k_max") c.game.k_max = v;
    else if (k == "threads") c.game.threads = v;
    else throw sfcgame::ConfigError("unknown integer key '" + k + "'");
    c.validate();
    config->value = std::move(c);
  });
}

size_t sfc_config_seed_count(const sfc_config* config) {
  return config ? config->value.seeds.size() : 0;
}

sfc_status sfc_config_seed(const sfc_config* config, size_t index, uint64_t* out) {
  if (!config || !out) return invalid("config and out must not be null");
  if (index >= config->value.seeds.size()) return invalid("seed index out of range");
  *out = config->value.seeds[index];
  return SFC_OK;
}

sfc_status sfc_config_to_json(const sfc_config* config, char** out) {
  if (!config || !out) return invalid("config and out must not be null");
  return guarded([&] { *out = dup_string(config->value.to_json()); });
}

void sfc_config_destroy(sfc_config* config) { delete config; }

sfc_status sfc_graph_create(const sfc_config* config, sfc_graph** out) {
  if (!config || !out) return invalid("config and out must not be null");
  *out = nullptr;
  return guarded([&] { *out = new sfc_graph{config->value.build_graph()}; });
}

int sfc_graph_node_count(const sfc_graph* graph) { return graph ? graph->value.node_count() : 0; }

int sfc_graph_link_count(const sfc_graph* graph) { return graph ? graph->value.link_count() : 0; }

sfc_status sfc_graph_to_json(const sfc_graph* graph, char** out) {
  if (!graph || !out) return invalid("graph and out must not be null");
  return guarded([&] { *out = dup_string(sfcgame::graph_to_json(graph->value)); });
}

void sfc_graph_destroy(sfc_graph* graph) { delete graph; }

sfc_status sfc_run_batch(const sfc_config* config, sfc_algorithm algorithm, uint64_t seed,
                         sfc_run** out) {
  return start_run(config, algorithm, out, [seed](const auto& c, auto a) {
    return sfcgame::run_batch_detailed(c, a, seed);
  });
}

sfc_status sfc_run_batch_workload(const sfc_config* config, sfc_algorithm algorithm,
                                  uint64_t seed, const char* workload_path, sfc_run** out) {
  if (!workload_path) return invalid("workload_path is null");
  return start_run(config, algorithm, out, [&](const auto& c, auto a) {
    auto requests = sfcgame::requests_from_json(sfcgame::read_file(workload_path));
    return sfcgame::run_batch_detailed(c, a, seed, std::move(requests));
  });
}

sfc_status sfc_run_online(const sfc_config* config, sfc_algorithm algorithm, uint64_t seed,
                          sfc_run** out) {
  return start_run(config, algorithm, out, [seed](const auto& c, auto a) {
    return sfcgame::run_online_detailed(c, a, seed);
  });
}

sfc_status sfc_run_append(sfc_run* into, sfc_run* from) {
  if (!into || !from) return invalid("runs must not be null");
  if (into == from) return invalid("cannot append a run to itself");
  return guarded([&] {
    auto& dst = into->value;
    auto& src = from->value;
    for (auto& s : src.slots) dst.slots.push_back(std::move(s));
    dst.checks += src.checks;
    dst.violations.insert(dst.violations.end(), src.violations.begin(), src.violations.end());
    src = sfcgame::RunResult{};
  });
}

size_t sfc_run_slot_count(const sfc_run* run) { return run ? run->value.slots.size() : 0; }

sfc_status sfc_run_slot(const sfc_run* run, size_t index, sfc_slot_metrics* out) {
  if (!run || !out) return invalid("run and out must not be null");
  if (index >= run->value.slots.size()) return invalid("slot index out of range");
  const auto& m = run->value.slots[index].metrics;
  *out = sfc_slot_metrics{m.slot,   from_algorithm(m.algorithm), m.seed,      m.phi,
                          m.allocated_fraction, m.mean_bw,       m.mean_power, m.mean_delay,
                          m.iterations};
  return SFC_OK;
}

long sfc_run_check_count(const sfc_run* run) { return run ? run->value.checks : 0; }

size_t sfc_run_violation_count(const sfc_run* run) {
  return run ? run->value.violations.size() : 0;
}

sfc_status sfc_run_emit_metrics(const sfc_run* run, sfc_format format, const char* path) {
  return emit_run(run, format, path, [](const auto& r, auto f, std::ostream& os) {
    sfcgame::emit_metrics(r.metrics(), f, os);
  });
}

sfc_status sfc_run_emit_trace(const sfc_run* run, sfc_format format, const char* path) {
  return emit_run(run, format, path, [](const auto& r, auto f, std::ostream& os) {
    sfcgame::emit_trace(r, f, os);
  });
}

sfc_status sfc_run_emit_costs(const sfc_run* run, sfc_format format, const char* path) {
  return emit_run(run, format, path, [](const auto& r, auto f, std::ostream& os) {
    sfcgame::emit_costs(r, f, os);
  });
}

sfc_status sfc_run_emit_timeline(const sfc_run* run, sfc_format format, const char* path) {
  return emit_run(run, format, path, [](const auto& r, auto f, std::ostream& os) {
    sfcgame::emit_timeline(r, f, os);
  });
}

sfc_status sfc_run_emit_workload(const sfc_run* run, const char* path) {
  if (!run) return invalid("run is null");
  return guarded([&] {
    std::vector<sfcgame::UserRequest> all;
    for (const auto& s : run->value.slots) all.insert(all.end(), s.requests.begin(), s.requests.end());
    sfcgame::write_output(path_or_stdout(path),
                          [&](std::ostream& os) { os << sfcgame::requests_to_json(all) << '\n'; });
  });
}

void sfc_run_destroy(sfc_run* run) { delete run; }

sfc_status sfc_run_taguchi(const sfc_config* config, uint64_t seed, const int* d_levels,
                           size_t d_count, const int* b_levels, size_t b_count,
                           const int* m_values, size_t m_count, int repetitions,
                           sfc_taguchi** out) {
  if (!config || !out) return invalid("config and out must not be null");
  *out = nullptr;
  return guarded([&] {
    const auto d = levels(d_levels, d_count, {1, 2, 4, 8});
    const auto b = levels(b_levels, b_count, {1, 2, 4, 8});
    const auto m = levels(m_values, m_count, {10, 20, 30});
    for (int v : d)
      if (v < 1) throw sfcgame::ConfigError("d levels must be >= 1");
    for (int v : b)
      if (v < 1) throw sfcgame::ConfigError("beam levels must be >= 1");
    for (int v : m)
      if (v < 0) throw sfcgame::ConfigError("request counts must be >= 0");
    *out = new sfc_taguchi{sfcgame::run_taguchi(config->value, seed, d, b, m, repetitions)};
  });
}

size_t sfc_taguchi_row_count(const sfc_taguchi* t) { return t ? t->value.rows.size() : 0; }

sfc_status sfc_taguchi_get_row(const sfc_taguchi* t, size_t index, sfc_taguchi_row* out) {
  if (!t || !out) return invalid("taguchi and out must not be null");
  if (index >= t->value.rows.size()) return invalid("row index out of range");
  const auto& r = t->value.rows[index];
  *out = sfc_taguchi_row{r.d, r.beam, r.requests, r.mean_phi, r.mean_allocated};
  return SFC_OK;
}

size_t sfc_taguchi_effect_count(const sfc_taguchi* t) { return t ? t->value.effects.size() : 0; }

sfc_status sfc_taguchi_get_effect(const sfc_taguchi* t, size_t index, sfc_taguchi_effect* out) {
  if (!t || !out) return invalid("taguchi and out must not be null");
  if (index >= t->value.effects.size()) return invalid("effect index out of range");
  const auto& e = t->value.effects[index];
  *out = sfc_taguchi_effect{e.factor == "beam" ? 1 : 0, e.level, e.requests, e.mean_phi};
  return SFC_OK;
}

sfc_status sfc_taguchi_emit(const sfc_taguchi* t, sfc_format format, const char* path) {
  if (!t) return invalid("taguchi is null");
  sfcgame::Format f;
  if (!to_format(format, f)) return invalid("unknown format");
  return guarded([&] {
    sfcgame::write_output(path_or_stdout(path),
                          [&](std::ostream& os) { sfcgame::emit_taguchi(t->value, f, os); });
  });
}

void sfc_taguchi_destroy(sfc_taguchi* t) { delete t; }

sfc_status sfc_check(const sfc_config* config, uint64_t seed, sfc_check_callback callback,
                     void* user, int* failures) {
  if (!config) return invalid("config is null");
  return guarded([&] {
    int failed = 0;
    for (const auto& r : sfcgame::run_property_checks(config->value, seed)) {
      if (!r.passed) ++failed;
      if (callback) callback(r.name.c_str(), r.passed ? 1 : 0, r.detail.c_str(), user);
    }
    if (failures) *failures = failed;
  });
}

}  // extern "C"
