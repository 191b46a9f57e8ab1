#include "cli/app.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "cli/format.hpp"

namespace nabla::cli {

namespace {

struct Globals {
  std::string format = "text";
  std::string cache_dir;
  bool no_cache = false;
  int jobs = 1;
  int max_degree = 8;
};

// Runs tasks on `jobs` threads; results come back in task order.
std::vector<VerdictReport> run_pool(const std::vector<std::function<VerdictReport()>>& tasks, int jobs) {
  std::vector<VerdictReport> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        results[i] = tasks[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), tasks.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

Json summary_json(const std::vector<VerdictReport>& reports) {
  int counts[3] = {0, 0, 0};
  for (const VerdictReport& r : reports) ++counts[static_cast<int>(r.status)];
  return Json{{"pass", counts[0]}, {"fail", counts[1]}, {"finding", counts[2]}};
}

void print_reports(const std::string& command, Json header, const std::vector<VerdictReport>& reports, Format format,
                   std::ostream& out) {
  switch (format) {
    case Format::json: {
      Json doc{{"command", command}};
      doc.update(header);
      Json list = Json::array();
      for (const VerdictReport& r : reports) list.push_back(report_json(r));
      doc["reports"] = list;
      doc["summary"] = summary_json(reports);
      out << doc.dump(2) << "\n";
      break;
    }
    case Format::latex: out << reports_latex(reports); break;
    case Format::text: {
      for (const VerdictReport& r : reports) out << report_text(r);
      const Json s = summary_json(reports);
      out << s["pass"].get<int>() << " pass, " << s["fail"].get<int>() << " fail, " << s["finding"].get<int>()
          << " finding\n";
      break;
    }
  }
}

std::string with_hint(const std::string& message) {
  if (message.find("degree budget") == std::string::npos) return message;
  return message + "; raise it with --max-degree";
}

// Points at the offending column under the input line.
void print_located_error(const std::string& input, int line, int column, const std::string& message,
                         std::ostream& err) {
  err << "error: " << with_hint(message) << "\n";
  std::size_t start = 0;
  for (int l = 1; l < line; ++l) {
    const std::size_t nl = input.find('\n', start);
    if (nl == std::string::npos) return;
    start = nl + 1;
  }
  const std::string text = input.substr(start, input.find('\n', start) - start);
  err << "  " << text << "\n  " << std::string(static_cast<std::size_t>(std::max(column - 1, 0)), ' ') << "^\n";
}

struct EvalOutcome {
  std::string input;
  std::optional<Value> value;
  std::string error;
};

EvalOutcome evaluate_line(const std::string& input, std::ostream& err) {
  EvalOutcome o{input, std::nullopt, ""};
  try {
    o.value = evaluate(*parse(input));
  } catch (const ParseError& e) {
    o.error = e.what();
    print_located_error(input, e.line(), e.column(), e.what(), err);
  } catch (const EvalError& e) {
    o.error = e.what();
    print_located_error(input, e.line(), e.column(), e.what(), err);
  } catch (const std::exception& e) {
    o.error = e.what();
    err << "error: " << with_hint(e.what()) << "\n";
  }
  return o;
}

int cmd_eval(const std::string& expression, Format format, std::istream& in, std::ostream& out, std::ostream& err) {
  std::vector<std::string> inputs;
  if (expression == "-") {
    std::string line;
    while (std::getline(in, line)) {
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      inputs.push_back(line);
    }
  } else {
    inputs.push_back(expression);
  }
  std::vector<EvalOutcome> outcomes;
  bool failed = false;
  for (const std::string& input : inputs) {
    outcomes.push_back(evaluate_line(input, err));
    failed = failed || !outcomes.back().value;
  }
  if (format == Format::json) {
    Json results = Json::array();
    for (const EvalOutcome& o : outcomes) {
      Json r{{"input", o.input}};
      if (o.value) r["value"] = value_json(*o.value);
      else r["error"] = o.error;
      results.push_back(r);
    }
    out << Json{{"command", "eval"}, {"results", results}}.dump(2) << "\n";
  } else {
    for (const EvalOutcome& o : outcomes)
      if (o.value) out << (format == Format::latex ? value_latex(*o.value) : value_text(*o.value)) << "\n";
  }
  return failed ? exit_usage : exit_ok;
}

int cmd_matrix(int n, Format format, std::ostream& out) {
  const NablaMatrix m = nabla_matrix(n);
  switch (format) {
    case Format::text: out << m.to_text(); break;
    case Format::latex: out << m.to_latex(); break;
    case Format::json: out << Json{{"command", "matrix"}, {"value", value_json(m)}}.dump(2) << "\n"; break;
  }
  return exit_ok;
}

int cmd_verify(const std::string& suite, int n_max, const Globals& g, Format format, std::ostream& out) {
  std::vector<std::string> ids;
  if (suite == "all") {
    ids = identity_ids();
  } else {
    ids.push_back(suite);
  }
  std::vector<std::function<VerdictReport()>> tasks;
  for (const std::string& id : ids) {
    if (id == "SIGN") tasks.emplace_back([n_max] { return check_sign_conjecture(n_max); });
    else tasks.emplace_back([id, n_max] { return verify(id, n_max); });
  }
  const std::vector<VerdictReport> reports = run_pool(tasks, g.jobs);
  print_reports("verify", Json{{"suite", suite}, {"n_max", n_max}}, reports, format, out);
  return exit_code_for(reports);
}

int cmd_scan(const std::string& target, int n, const Globals& g, Format format, std::ostream& out) {
  std::vector<std::function<VerdictReport()>> tasks;
  auto add = [&](const std::string& name) {
    if (name == "sign") {
      tasks.emplace_back([n] { return check_sign_conjecture(n); });
      return;
    }
    const ScanTarget t = *scan_target_from_name(name);
    tasks.emplace_back([t, n] { return scan_positivity(t, n); });
  };
  if (target == "all") {
    for (const char* name : {"bght", "haiman", "haglund-eps", "gh-eps", "sign"}) add(name);
  } else {
    add(target);
  }
  const std::vector<VerdictReport> reports = run_pool(tasks, g.jobs);
  print_reports("scan", Json{{"target", target}, {"n", n}}, reports, format, out);
  return exit_code_for(reports);
}

int cmd_cache(bool rebuild, int n_max, Format format, std::ostream& out, std::ostream& err) {
  const auto dir = cache_directory();
  if (!dir) {
    err << "error: the disk cache is disabled (--no-cache)\n";
    return exit_usage;
  }
  Json entries = Json::array();
  for (int n = 0; n <= n_max; ++n) {
    const auto start = std::chrono::steady_clock::now();
    std::string status;
    std::string diagnostic;
    std::optional<MacdonaldBasis> loaded;
    if (!rebuild) loaded = cache_load(n, *dir, &diagnostic);
    if (loaded) {
      status = "valid";
    } else {
      cache_store(compute_basis(n), *dir);
      status = rebuild ? "rebuilt" : "built";
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    Json e{{"n", n}, {"file", cache_file(*dir, n).string()}, {"status", status}, {"ms", ms}};
    if (!diagnostic.empty() && !loaded) e["diagnostic"] = diagnostic;
    entries.push_back(e);
  }
  if (format == Format::json) {
    out << Json{{"command", "cache"}, {"directory", dir->string()}, {"rebuild", rebuild}, {"entries", entries}}.dump(2)
        << "\n";
  } else {
    for (const Json& e : entries) {
      out << "n=" << e["n"].get<int>() << "  " << e["status"].get<std::string>() << "  " << e["file"].get<std::string>();
      if (e.contains("diagnostic")) out << "  (" << e["diagnostic"].get<std::string>() << ")";
      out << "\n";
    }
  }
  return exit_ok;
}

}  // namespace

int exit_code_for(const std::vector<VerdictReport>& reports) {
  bool finding = false;
  for (const VerdictReport& r : reports) {
    if (r.status == Status::fail) return exit_failure;
    finding = finding || r.status == Status::finding;
  }
  return finding ? exit_finding : exit_ok;
}

int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations with nabla and Macdonald polynomials", "nabla_kit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json", "latex"}));
  app.add_option("--cache-dir", g.cache_dir, "Cache directory (overrides NABLA_KIT_CACHE)");
  app.add_flag("--no-cache", g.no_cache, "Keep Macdonald bases in memory only");
  app.add_option("--jobs,-j", g.jobs, "Worker threads for verify and scan")->check(CLI::PositiveNumber);
  app.add_option("--max-degree", g.max_degree, "Largest degree for which a Macdonald basis is computed")
      ->check(CLI::NonNegativeNumber);

  std::string expression;
  auto* eval = app.add_subcommand("eval", "Evaluate an expression ('-' reads one per line from stdin)");
  eval->add_option("expr", expression, "Expression")->required();

  int matrix_n = 0;
  auto* matrix = app.add_subcommand("matrix", "Print the nabla matrix on Schur functions of degree n");
  matrix->add_option("--n", matrix_n, "Degree")->required()->check(CLI::PositiveNumber);

  std::string suite = "all";
  int n_max = 4;
  auto* verify_cmd = app.add_subcommand("verify", "Check identities exactly up to a degree");
  std::vector<std::string> suites{"all", "SIGN"};
  for (const std::string& id : identity_ids()) suites.push_back(id);
  verify_cmd->add_option("--suite", suite, "all or one identity id")->check(CLI::IsMember(suites));
  verify_cmd->add_option("--n-max", n_max, "Largest degree")->check(CLI::NonNegativeNumber);

  std::string target = "all";
  int scan_n = 4;
  auto* scan = app.add_subcommand("scan", "Schur positivity scans");
  scan->add_option("--target", target, "Scan target")
      ->check(CLI::IsMember({"bght", "haiman", "haglund-eps", "gh-eps", "sign", "all"}));
  scan->add_option("--n", scan_n, "Degree")->check(CLI::PositiveNumber);

  bool rebuild = false;
  int cache_n = 6;
  auto* cache = app.add_subcommand("cache", "Fill or rebuild the on-disk Macdonald cache");
  cache->add_flag("--rebuild", rebuild, "Recompute even valid entries");
  cache->add_option("--n-max", cache_n, "Largest degree")->check(CLI::NonNegativeNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  const Format format = *format_from_name(g.format);
  try {
    set_degree_budget(g.max_degree);
    if (g.no_cache) set_cache_directory(std::nullopt);
    else set_cache_directory(g.cache_dir.empty() ? default_cache_directory() : std::filesystem::path(g.cache_dir));

    if (eval->parsed()) return cmd_eval(expression, format, in, out, err);
    if (matrix->parsed()) return cmd_matrix(matrix_n, format, out);
    if (verify_cmd->parsed()) return cmd_verify(suite, n_max, g, format, out);
    if (scan->parsed()) return cmd_scan(target, scan_n, g, format, out);
    if (cache->parsed()) return cmd_cache(rebuild, cache_n, format, out, err);
  } catch (const std::exception& e) {
    err << "error: " << with_hint(e.what()) << "\n";
    return exit_usage;
  }
  return exit_usage;
}

}  // namespace nabla::cli
