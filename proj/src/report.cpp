#include "gringcheck/report.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace gring {

using json = nlohmann::json;

RunConfig RunConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

RunConfig RunConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  RunConfig c;
  c.params.l = j.value("l", 3);
  c.params.a = j.value("a", 2);
  c.params.m = j.value("m", 0);
  c.params.guard = j.value("guard", 0);
  c.groups = j.value("groups", std::vector<std::string>{});
  c.checks = j.value("checks", std::vector<std::string>{});
  c.trials = j.value("trials", 10);
  c.seed = (u64)j.value("seed", 1);
  c.prop6_table = j.value("prop6_table", std::string{});
  c.validate();
  return c;
}

void RunConfig::validate() const {
  if (params.l != 3)
    throw ConfigError("only l = 3 is supported by the catalog");
  if (params.a < 1 || params.a > 8) throw ConfigError("a out of range [1,8]");
  if (params.m < 0 || params.m > 3) throw ConfigError("m out of range [0,3]");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  auto entries = catalog_entries();
  for (const std::string& g : groups) {
    bool ok = false;
    for (auto& e : entries) ok |= e.id == g;
    if (!ok) throw ConfigError("unknown group id: " + g);
  }
  for (const std::string& c : checks)
    if (!is_known_check(c)) throw ConfigError("unknown check id: " + c);
  bool wants_prop6 = false;
  for (const std::string& c : checks)
    wants_prop6 |= c == "prop6" || c == "prop6-with-file";
  if (wants_prop6 && prop6_table.empty())
    throw ConfigError("prop6 requires prop6_table in the config");
}

std::string VerificationReport::to_json(bool with_timings) const {
  json j;
  j["config"] = {{"l", config.params.l},       {"a", config.params.a},
                 {"m", config.params.m},       {"guard", config.params.guard},
                 {"groups", config.groups},    {"checks", config.checks},
                 {"trials", config.trials},    {"seed", config.seed}};
  if (!config.prop6_table.empty())
    j["config"]["prop6_table"] = config.prop6_table;
  j["version"] = "gringcheck 1.0";
  j["results"] = json::array();
  for (const CheckResult& r : results) {
    json e;
    e["check"] = r.check;
    e["group"] = r.group;
    e["pass"] = r.pass;
    e["trials"] = r.trials;
    if (r.skipped) {
      e["skipped"] = r.skip_reason.empty() ? "size" : r.skip_reason;
    }
    e["counterexample"] =
        r.counterexample.empty() ? json(nullptr) : json(r.counterexample);
    e["time_ms"] = with_timings ? r.time_ms : 0.0;
    j["results"].push_back(std::move(e));
  }
  j["pass"] = all_pass;
  return j.dump(2) + "\n";
}

VerificationReport run_suite(const RunConfig& config, int jobs) {
  VerificationReport rep;
  rep.config = config;
  std::vector<std::pair<std::string, std::string>> tasks;
  std::vector<std::string> checks = config.checks;
  std::sort(checks.begin(), checks.end());
  checks.erase(std::unique(checks.begin(), checks.end()), checks.end());
  std::vector<std::string> groups = config.groups;
  std::sort(groups.begin(), groups.end());
  groups.erase(std::unique(groups.begin(), groups.end()), groups.end());
  for (const auto& c : checks)
    for (const auto& g : groups) tasks.emplace_back(c, g);
  rep.results.resize(tasks.size());
  CheckContext ctx;
  ctx.params = config.params;
  ctx.seed = config.seed;
  ctx.trials = config.trials;
  ctx.prop6_path = config.prop6_table;
  std::atomic<size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        rep.results[i] = run_check(tasks[i].first, tasks[i].second, ctx);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!err) err = std::current_exception();
        return;
      }
    }
  };
  int nthreads = std::max(1, std::min<int>(jobs, (int)tasks.size()));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (err) std::rethrow_exception(err);
  std::sort(rep.results.begin(), rep.results.end(),
            [](const CheckResult& a, const CheckResult& b) {
              if (a.check != b.check) return a.check < b.check;
              return a.group < b.group;
            });
  for (const CheckResult& r : rep.results)
    if (!r.pass && !r.skipped) rep.all_pass = false;
  return rep;
}

std::string catalog_json() {
  json j = json::array();
  for (const CatalogEntry& e : catalog_entries()) {
    json g;
    g["id"] = e.id;
    g["order"] = e.order;
    g["w"] = e.w;
    g["m"] = e.m;
    g["note"] = e.note;
    g["lattice_within_bound"] = e.order <= 243 * std::max(1, e.w);
    j.push_back(std::move(g));
  }
  json out;
  out["groups"] = std::move(j);
  out["checks"] = check_names();
  return out.dump(2) + "\n";
}

std::string catalog_text() {
  std::ostringstream os;
  os << "groups:\n";
  for (const CatalogEntry& e : catalog_entries()) {
    os << "  " << e.id << "  order=" << e.order << " w=" << e.w
       << " m=" << e.m;
    if (e.order > 243 * std::max(1, e.w)) os << "  [lattice: size-bounded]";
    os << "  -- " << e.note << "\n";
  }
  os << "checks:\n ";
  for (const auto& c : check_names()) os << " " << c;
  os << "\n";
  return os.str();
}

}  // namespace gring
