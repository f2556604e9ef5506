#include "app.hpp"

#include "commands.hpp"
#include "ddff/errors.hpp"
#include "ddff/parallel.hpp"
#include "ddff/version.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace ddff::cli {

namespace {

using Handler = std::function<Output(const Context&)>;

const std::map<std::string, Handler>& tasks() {
  static const std::map<std::string, Handler> table{
      {"seq", run_seq},
      {"ff-scan", run_ff_scan},
      {"order-fit", run_order_fit},
      {"dynamics", run_dynamics},
      {"plateau-scan", run_plateau_scan},
      {"oracle", run_oracle},
      {"two-stage", run_two_stage},
  };
  return table;
}

const std::map<std::string, std::string>& subcommand_tasks() {
  static const std::map<std::string, std::string> table{
      {"seq", "seq"},           {"ff", "ff-scan"},     {"fit", "order-fit"},   {"dyn", "dynamics"},
      {"plateau", "plateau-scan"}, {"oracle", "oracle"}, {"twostage", "two-stage"},
  };
  return table;
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write " + path);
  f << contents;
  if (!f) throw InvalidArgument("failed writing " + path);
}

json load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot read config " + path);
  json cfg = json::parse(f);
  if (!cfg.is_object()) throw InvalidArgument("config must be a JSON object");
  if (!cfg.contains("schema") || cfg["schema"] != 1) throw InvalidArgument("config needs \"schema\": 1");
  return cfg;
}

json provenance(const json& cfg, const std::string& task, std::uint64_t seed, unsigned threads) {
  return {{"schema", 1},
          {"task", task},
          {"config_hash", "fnv1a64:" + hex(fnv1a(cfg.dump()))},
          {"engine", {{"name", "ddff"}, {"version", kVersion}}},
          {"seed", seed},
          {"threads", threads}};
}

}  // namespace

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-qubit dynamical decoupling filter functions and storage fidelity", "ddff"};
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  app.add_option("--config", config_path, "JSON experiment config")->check(CLI::ExistingFile);
  app.add_option("--out", out_path, "CSV output path; the JSON sidecar is <out>.json");
  app.add_option("--seed", seed, "overrides the config seed");
  app.add_option("--threads", threads, "worker threads, 0 = all cores");
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  std::string chosen;
  for (const auto& [name, task] : subcommand_tasks()) {
    app.add_subcommand(name, "task " + task)->callback([&chosen, name = name] { chosen = name; });
  }
  app.add_subcommand("run", "task taken from the config \"task\" field")->callback([&chosen] { chosen = "run"; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kExitOk : kExitValidation;
  }

  json cfg;
  std::string task;
  Context ctx;
  try {
    if (config_path.empty()) throw InvalidArgument("--config is required");
    cfg = load_config(config_path);
    if (chosen == "run") {
      task = require(cfg, "task").get<std::string>();
    } else {
      task = subcommand_tasks().at(chosen);
      if (cfg.contains("task") && cfg["task"] != task)
        throw InvalidArgument("config task \"" + cfg["task"].get<std::string>() + "\" does not match subcommand " + chosen);
    }
    const auto handler = tasks().find(task);
    if (handler == tasks().end()) throw InvalidArgument("unknown task: " + task);
    if (out_path.empty() && cfg.contains("output")) out_path = cfg["output"].get<std::string>();
    ctx.config = cfg;
    ctx.seed = seed ? *seed : cfg.value("seed", std::uint64_t{0});
    ctx.threads = threads;
    set_default_threads(threads);

    Output result = handler->second(ctx);
    json sidecar = provenance(cfg, task, ctx.seed, threads);
    sidecar["status"] = "ok";
    sidecar["result"] = result.report;
    if (out_path.empty()) {
      out << result.csv;
    } else {
      write_file(out_path, result.csv);
      write_file(out_path + ".json", sidecar.dump(2) + "\n");
      for (const auto& [suffix, contents] : result.extra_files) write_file(out_path + suffix, contents);
    }
    return kExitOk;
  } catch (const DivergenceError& e) {
    json diag = provenance(cfg, task, ctx.seed, threads);
    diag["status"] = "diverged";
    diag["error"] = e.what();
    diag["exponent_sum"] = e.exponent_sum();
    err << diag.dump(2) << "\n";
    if (!out_path.empty()) {
      try {
        write_file(out_path + ".json", diag.dump(2) + "\n");
      } catch (const std::exception&) {
      }
    }
    return kExitDivergence;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const json::exception& e) {
    err << "config error: " << e.what() << "\n";
  }
  return kExitValidation;
}

}  // namespace ddff::cli
