#include "sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <vector>

#include <omp.h>

#include "commands.hpp"
#include "radialnet/rng.hpp"

namespace radialnet::cli {
namespace {

struct Cell {
  std::size_t index = 0;
  std::string target, d, epsilon, width;
  std::string key() const { return target + "|" + d + "|" + epsilon + "|" + width; }
};

const char* kHeader = "target,d,epsilon,width,seed,sup_error,status,exit_code,wall_time";

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string> required_list(const JobConfig& cfg, const std::string& key) {
  auto v = cfg.list(key);
  if (v.empty()) throw UsageError("sweep needs a non-empty list for '" + key + "'");
  return v;
}

}  // namespace

int cmd_sweep(const JobConfig& cfg, std::ostream& out) {
  const auto targets = cfg.has("target") ? cfg.list("target") : std::vector<std::string>{"fd"};
  const auto ds = required_list(cfg, "d");
  const auto eps = required_list(cfg, "epsilon");
  auto widths = cfg.list("width");
  if (widths.empty()) widths.push_back("");
  for (const auto& s : ds) parse_int("d", s);
  for (const auto& s : eps) parse_double("epsilon", s);
  for (const auto& s : widths)
    if (!s.empty()) parse_int("width", s);

  std::vector<Cell> cells;
  for (const auto& t : targets)
    for (const auto& d : ds)
      for (const auto& e : eps)
        for (const auto& w : widths) cells.push_back({cells.size(), t, d, e, w});

  const std::string csv_path = cfg.get("out", "sweep.csv");
  const std::string ledger_path = cfg.get("ledger", csv_path + ".ledger");
  const std::uint64_t base_seed = resolve_seed(cfg);
  const long stop_after = cfg.get_int("stop_after", -1);

  // resume: rows already in the ledger; a torn last line is ignored
  std::map<std::string, std::string> done;
  {
    std::ifstream in(ledger_path);
    std::string line;
    while (std::getline(in, line)) {
      try {
        const auto j = nlohmann::json::parse(line);
        done[j.at("key").get<std::string>()] = j.at("row").get<std::string>();
      } catch (const std::exception&) {
      }
    }
  }

  std::vector<const Cell*> todo;
  for (const auto& c : cells)
    if (!done.count(c.key())) todo.push_back(&c);
  if (stop_after >= 0 && static_cast<std::size_t>(stop_after) < todo.size()) todo.resize(stop_after);

  unsigned threads = static_cast<unsigned>(cfg.get_int("threads", std::max(1u, std::thread::hardware_concurrency())));
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, todo.size()))));
  const int inner = std::max(1, omp_get_max_threads() / static_cast<int>(threads));

  std::mutex mu;
  std::ofstream ledger(ledger_path, std::ios::app);
  if (!ledger) throw std::runtime_error("cannot open ledger " + ledger_path);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;

  auto worker = [&] {
    omp_set_num_threads(inner);
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= todo.size()) return;
      const Cell& c = *todo[i];
      JobConfig cell;
      for (const auto& [k, v] : cfg.values())
        if (k != "out" && k != "ledger" && k != "threads" && k != "stop_after" && k != "width") cell.set(k, v);
      cell.set("target", c.target);
      cell.set("d", c.d);
      cell.set("epsilon", c.epsilon);
      if (!c.width.empty()) cell.set("width", c.width);
      const std::uint64_t seed = derive_seed(base_seed, c.index);
      cell.set("seed", std::to_string(seed));
      std::string row;
      try {
        const BuildOutcome r = run_build(cell, seed);
        row = csv_field(c.target) + "," + c.d + "," + c.epsilon + "," + std::to_string(r.width) + "," +
              std::to_string(seed) + "," + fmt(r.sup_error) + "," + r.status + "," +
              std::to_string(r.exit_code) + "," + fmt(r.wall_time);
      } catch (...) {
        std::lock_guard<std::mutex> lk(mu);
        if (!failure) failure = std::current_exception();
        return;
      }
      std::lock_guard<std::mutex> lk(mu);
      done[c.key()] = row;
      ledger << nlohmann::json{{"key", c.key()}, {"index", c.index}, {"row", row}}.dump() << '\n';
      ledger.flush();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::size_t complete = 0;
  for (const auto& c : cells) complete += done.count(c.key());
  if (complete < cells.size()) {
    out << "sweep incomplete: " << complete << "/" << cells.size() << " cells in " << ledger_path << '\n';
    return kOk;
  }
  std::ostringstream csv;
  csv << kHeader << '\n';
  for (const auto& c : cells) csv << done[c.key()] << '\n';
  write_atomic(csv_path, csv.str());
  out << "sweep complete: " << cells.size() << " cells -> " << csv_path << '\n';
  return kOk;
}

}  // namespace radialnet::cli
