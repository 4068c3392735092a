#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>
#include <vector>

#include "curvlab/run.hpp"

namespace fs = std::filesystem;
using curvlab::cli::Mode;

namespace {

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"curvlab: prescribed curvature solver and regularity analysis"};
  app.require_subcommand(1, 1);

  std::vector<std::string> configs;
  std::size_t jobs = 1;
  std::string out_dir;

  const std::vector<std::string> names = {"solve", "classify", "check-criteria", "oracle-compare", "probe"};
  for (const auto& name : names) {
    CLI::App* sub = app.add_subcommand(name, "run configs in " + name + " mode");
    sub->add_option("config", configs, "config file(s)")->required()->check(CLI::ExistingFile);
    sub->add_option("--jobs,-j", jobs, "number of worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out,-o", out_dir, "directory for <stem>.json and <stem>.dat");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : curvlab::cli::kExitConfig;
  }

  const Mode mode = curvlab::cli::parse_mode(app.get_subcommands().front()->get_name());
  if (!out_dir.empty()) fs::create_directories(out_dir);

  std::vector<curvlab::cli::RunOutput> results(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) results[i] = curvlab::cli::run_file(configs[i], mode);
  };
  std::vector<std::thread> pool;
  const std::size_t workers = std::min(jobs, std::max<std::size_t>(configs.size(), 1));
  for (std::size_t k = 0; k < workers; ++k) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  int rc = 0;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const auto& r = results[i];
    rc = std::max(rc, r.exit_code);
    if (out_dir.empty()) {
      std::cout << r.report.dump(2) << '\n';
      continue;
    }
    const fs::path stem = fs::path(out_dir) / fs::path(configs[i]).stem();
    try {
      write_file(stem.string() + ".json", r.report.dump(2) + "\n");
      if (!r.columns.empty()) write_file(stem.string() + ".dat", r.columns);
    } catch (const std::exception& e) {
      std::cerr << e.what() << '\n';
      rc = std::max(rc, static_cast<int>(curvlab::cli::kExitFailure));
    }
  }
  return rc;
}
