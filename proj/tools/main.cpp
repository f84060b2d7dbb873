#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "grouplat/error.hpp"
#include "task.hpp"

namespace fs = std::filesystem;
using grouplat::cli::Json;

namespace {

constexpr int kParseError = 2;
constexpr int kPrecondition = 3;

Json load(const std::string& path) {
  std::stringstream buf;
  if (path.empty() || path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw grouplat::Error(grouplat::ErrorKind::MalformedInput, "cannot read " + path);
    buf << in.rdbuf();
  }
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw grouplat::Error(grouplat::ErrorKind::MalformedInput, e.what());
  }
}

int exit_code(const grouplat::Error& e) {
  return e.is_parse_error() ? kParseError : kPrecondition;
}

template <class F>
int guarded(F&& f) {
  try {
    return f();
  } catch (const grouplat::Error& e) {
    std::cerr << "grouplat: " << e.what() << '\n';
    return exit_code(e);
  } catch (const Json::exception& e) {
    std::cerr << "grouplat: MalformedInput: " << e.what() << '\n';
    return kParseError;
  }
}

int run_batch(const std::string& dir, const grouplat::cli::TaskOptions& options) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  int worst = 0;
  for (const fs::path& f : files) {
    Json line = Json::object();
    line["file"] = f.filename().string();
    try {
      line["result"] = grouplat::cli::run_task(load(f.string()), options);
    } catch (const grouplat::Error& e) {
      line["error"] = e.what();
      worst = std::max(worst, exit_code(e));
    } catch (const Json::exception& e) {
      line["error"] = std::string("MalformedInput: ") + e.what();
      worst = std::max(worst, kParseError);
    }
    std::cout << line.dump() << '\n';
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closest, shortest, distance and geodesic problems in free and nilpotent groups"};
  app.require_subcommand(1);

  grouplat::cli::TaskOptions options;
  if (const char* env = std::getenv("GROUPLAT_EXPAND_BUDGET")) {
    try {
      options.expand_budget = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "grouplat: GROUPLAT_EXPAND_BUDGET is not a number\n";
      return kParseError;
    }
  }

  std::string file;
  std::string batch;
  std::size_t check = 0;
  auto* run = app.add_subcommand("run", "Solve a task file and print the result as JSON");
  run->add_option("file", file, "Task file (stdin if omitted or -)");
  auto* check_opt = run->add_option("--check-oracle", check, "Cross-check with the brute-force oracle at this budget");
  run->add_flag("--compact", options.compact, "Single-letter word syntax, uppercase for inverses");
  run->add_flag("--timing", options.timing, "Include wall-clock time in the result");
  run->add_option("--batch", batch, "Run every .json file in a directory");

  std::string dot_file;
  std::string dot_out;
  auto* dot = app.add_subcommand("dot", "Write the task's graph in DOT format");
  dot->add_option("file", dot_file, "Task file")->required();
  dot->add_option("-o,--output", dot_out, "Output path (stdout if omitted)");
  dot->add_flag("--compact", options.compact, "Single-letter word syntax");

  std::string oracle_file;
  std::size_t oracle_budget = 6;
  auto* oracle = app.add_subcommand("oracle", "Run only the brute-force oracle for a task");
  oracle->add_option("file", oracle_file, "Task file (stdin if omitted or -)");
  oracle->add_option("--budget", oracle_budget, "Search budget");
  oracle->add_flag("--compact", options.compact, "Single-letter word syntax");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kParseError;
  }

  if (*run) {
    if (*check_opt) options.check_oracle = check;
    if (!batch.empty()) return guarded([&] { return run_batch(batch, options); });
    return guarded([&] {
      std::cout << grouplat::cli::run_task(load(file), options).dump() << '\n';
      return 0;
    });
  }
  if (*dot) {
    return guarded([&] {
      std::string text = grouplat::cli::task_dot(load(dot_file), options);
      if (dot_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(dot_out);
        if (!out || !(out << text)) {
          std::cerr << "grouplat: cannot write " << dot_out << '\n';
          return 1;
        }
      }
      return 0;
    });
  }
  options.check_oracle = oracle_budget;
  return guarded([&] {
    std::cout << grouplat::cli::run_oracle(load(oracle_file), options).dump() << '\n';
    return 0;
  });
}
