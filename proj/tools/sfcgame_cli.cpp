// Command-line driver for the SFC placement game library.

#include <cstdint>
#include <cstdio>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sfcgame/sfcgame.h"

namespace {

struct Options {
  std::string config_path;
  std::string algorithm = "pgra";
  std::optional<std::uint64_t> seed;
  std::string out = "-";
  std::string format = "csv";
  std::optional<int> d;
  std::optional<int> beam;
  std::optional<int> requests;
  std::optional<int> nodes;
  std::optional<int> slots;
  std::optional<int> threads;
  std::string workload_in;
  std::string trace_out;
  std::string costs_out;
  std::string timeline_out;
  std::string workload_out;
  int repetitions = 10;
  std::vector<int> m_values{10, 20, 30};
};

class Failure : public std::exception {
 public:
  explicit Failure(int code) : code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

void ok(sfc_status s, const char* what) {
  if (s == SFC_OK) return;
  std::fprintf(stderr, "sfcgame: %s: %s\n", what, sfc_last_error());
  throw Failure(s == SFC_ERR_IO ? 3 : 2);
}

struct ConfigDeleter {
  void operator()(sfc_config* c) const { sfc_config_destroy(c); }
};
struct RunDeleter {
  void operator()(sfc_run* r) const { sfc_run_destroy(r); }
};
struct TaguchiDeleter {
  void operator()(sfc_taguchi* t) const { sfc_taguchi_destroy(t); }
};
using ConfigPtr = std::unique_ptr<sfc_config, ConfigDeleter>;
using RunPtr = std::unique_ptr<sfc_run, RunDeleter>;
using TaguchiPtr = std::unique_ptr<sfc_taguchi, TaguchiDeleter>;

ConfigPtr make_config(const Options& o) {
  sfc_config* raw = nullptr;
  if (o.config_path.empty())
    ok(sfc_config_create(&raw), "config");
  else
    ok(sfc_config_load(o.config_path.c_str(), &raw), "config");
  ConfigPtr c(raw);
  auto set = [&](const char* key, const std::optional<int>& v) {
    if (v) ok(sfc_config_set_int(c.get(), key, *v), key);
  };
  set("nodes", o.nodes);
  set("d", o.d);
  set("beam", o.beam);
  set("requests", o.requests);
  set("slots", o.slots);
  set("threads", o.threads);
  return c;
}

sfc_algorithm algorithm_of(const std::string& s) {
  if (s == "viterbi") return SFC_ALGORITHM_VITERBI;
  if (s == "greedy") return SFC_ALGORITHM_GREEDY;
  return SFC_ALGORITHM_PGRA;
}

sfc_format format_of(const std::string& s) {
  return s == "json" ? SFC_FORMAT_JSON : SFC_FORMAT_CSV;
}

// The seed flag wins; otherwise every seed listed in the config is run.
std::vector<std::uint64_t> seeds_of(const Options& o, const sfc_config* config) {
  if (o.seed) return {*o.seed};
  std::vector<std::uint64_t> seeds(sfc_config_seed_count(config));
  for (std::size_t i = 0; i < seeds.size(); ++i) ok(sfc_config_seed(config, i, &seeds[i]), "seed");
  return seeds;
}

void emit_extras(const Options& o, const sfc_run* run) {
  const sfc_format f = format_of(o.format);
  if (!o.trace_out.empty()) ok(sfc_run_emit_trace(run, f, o.trace_out.c_str()), "trace");
  if (!o.costs_out.empty()) ok(sfc_run_emit_costs(run, f, o.costs_out.c_str()), "costs");
  if (!o.timeline_out.empty())
    ok(sfc_run_emit_timeline(run, f, o.timeline_out.c_str()), "timeline");
  if (!o.workload_out.empty()) ok(sfc_run_emit_workload(run, o.workload_out.c_str()), "workload");
}

int report_violations(const sfc_run* run) {
  const std::size_t v = sfc_run_violation_count(run);
  if (v == 0) return 0;
  std::fprintf(stderr, "sfcgame: %zu constraint violations in %ld checks\n", v,
               sfc_run_check_count(run));
  return 4;
}

int run_slots(const Options& o, bool online) {
  ConfigPtr config = make_config(o);
  RunPtr all;
  for (std::uint64_t seed : seeds_of(o, config.get())) {
    sfc_run* raw = nullptr;
    if (online)
      ok(sfc_run_online(config.get(), algorithm_of(o.algorithm), seed, &raw), "online");
    else if (!o.workload_in.empty())
      ok(sfc_run_batch_workload(config.get(), algorithm_of(o.algorithm), seed,
                                o.workload_in.c_str(), &raw),
         "batch");
    else
      ok(sfc_run_batch(config.get(), algorithm_of(o.algorithm), seed, &raw), "batch");
    RunPtr run(raw);
    if (!all)
      all = std::move(run);
    else
      ok(sfc_run_append(all.get(), run.get()), "append");
  }
  ok(sfc_run_emit_metrics(all.get(), format_of(o.format), o.out.c_str()), "output");
  emit_extras(o, all.get());
  return report_violations(all.get());
}

int run_taguchi(const Options& o) {
  ConfigPtr config = make_config(o);
  const auto seeds = seeds_of(o, config.get());
  sfc_taguchi* raw = nullptr;
  ok(sfc_run_taguchi(config.get(), seeds.front(), nullptr, 0, nullptr, 0, o.m_values.data(),
                     o.m_values.size(), o.repetitions, &raw),
     "taguchi");
  TaguchiPtr t(raw);
  ok(sfc_taguchi_emit(t.get(), format_of(o.format), o.out.c_str()), "output");
  return 0;
}

void print_check(const char* name, int passed, const char* detail, void*) {
  std::printf("%s %s: %s\n", passed ? "PASS" : "FAIL", name, detail);
}

int run_check(const Options& o) {
  ConfigPtr config = make_config(o);
  int failures = 0;
  ok(sfc_check(config.get(), seeds_of(o, config.get()).front(), print_check, nullptr, &failures),
     "check");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Satellite SFC placement: potential game, Viterbi and greedy baselines"};
  app.set_version_flag("--version", std::string(sfc_version()));
  app.require_subcommand(1);

  Options o;
  auto common = [&o](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--seed", o.seed, "master seed (default: seeds from the config)");
    sub->add_option("--out", o.out, "output file, - for stdout");
    sub->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--d", o.d, "candidate path count")->check(CLI::Range(1, 64));
    sub->add_option("--beam", o.beam, "beam width, 0 for unbounded")->check(CLI::Range(0, 1 << 20));
    sub->add_option("--nodes", o.nodes, "constellation size")
        ->check(CLI::IsMember({6, 9, 12, 15}));
    sub->add_option("--threads", o.threads, "proposal threads")->check(CLI::Range(1, 256));
  };
  auto placement = [&o](CLI::App* sub) {
    sub->add_option("--algorithm", o.algorithm, "placement algorithm")
        ->check(CLI::IsMember({"pgra", "viterbi", "greedy"}));
    sub->add_option("--trace", o.trace_out, "write the per-iteration trace here");
    sub->add_option("--costs", o.costs_out, "write per-request costs here");
    sub->add_option("--timeline", o.timeline_out, "write per-server states here");
    sub->add_option("--workload-out", o.workload_out, "write the generated requests here");
  };

  auto* batch = app.add_subcommand("batch", "one slot with a fixed number of requests");
  common(batch);
  placement(batch);
  batch->add_option("--requests", o.requests, "request count M")->check(CLI::NonNegativeNumber);
  batch->add_option("--workload", o.workload_in, "place these requests instead of generating")
      ->check(CLI::ExistingFile);

  auto* online = app.add_subcommand("online", "time-slotted simulation");
  common(online);
  placement(online);
  online->add_option("--slots", o.slots, "number of slots")->check(CLI::PositiveNumber);

  auto* taguchi = app.add_subcommand("taguchi", "sweep of d and beam width levels");
  common(taguchi);
  taguchi->add_option("--requests", o.m_values, "request counts to sweep");
  taguchi->add_option("--repetitions", o.repetitions, "runs per cell")
      ->check(CLI::PositiveNumber);

  auto* check = app.add_subcommand("check", "run the property suites");
  common(check);
  check->add_option("--requests", o.requests, "request count M")->check(CLI::NonNegativeNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (batch->parsed()) return run_slots(o, false);
    if (online->parsed()) return run_slots(o, true);
    if (taguchi->parsed()) return run_taguchi(o);
    return run_check(o);
  } catch (const Failure& f) {
    return f.code();
  }
}
