#include "dtq/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "dtq/birthdeath.hpp"
#include "dtq/busy.hpp"
#include "dtq/littles.hpp"
#include "dtq/observer.hpp"

namespace dtq {

using nlohmann::json;

namespace {

constexpr double kBusyModelTol = 0.02;
constexpr double kBusyFiniteTol = 0.03;

json combo_inputs(int rep, SchedulingRule rule, ObservationEpoch epoch) {
  return {{"replication", rep},
          {"rule", std::string(to_string(rule))},
          {"epoch", std::string(to_string(epoch))},
          {"class", std::string(to_string(classify(rule, epoch)))}};
}

// First combo of the class in table order.
Combo representative(CoherenceClass cls) {
  const auto t = classification_table();
  for (auto r : kAllRules)
    for (auto e : kAllEpochs)
      if (t[static_cast<std::size_t>(r)][static_cast<std::size_t>(e)] == cls) return {r, e};
  throw std::logic_error("no combo for class");
}

bool single_server(const ExperimentConfig& c) { return c.server_count() == 1; }

std::optional<std::string> not_applicable(const ExperimentConfig& c, const std::string& check) {
  if (check == "pk" && !(c.arrival_kind == ArrivalKind::BERNOULLI && single_server(c)))
    return "needs Bernoulli arrivals and one server";
  if ((check == "dist" || check == "table61") && !c.is_bgeom1() &&
      !(check == "dist" && c.arrival_kind == ArrivalKind::FINITE && c.model.service.is_geometric()))
    return "needs B/Geom/1 (or a finite population with geometric service for dist)";
  if (check == "busy" && c.server_count() == 0) return "busy cycles need a finite number of servers";
  if (check == "utilization" && (c.arrival_kind == ArrivalKind::FINITE || c.arrival_kind == ArrivalKind::EXPLICIT))
    return "no offered-load formula for this arrival process";
  return std::nullopt;
}

std::vector<double> finite_pop_pi(const ExperimentConfig& c) {
  const auto& f = std::get<FinitePopulationArrivals>(c.model.arrivals);
  return product_form(finite_population_profile(c.population, c.alpha, c.beta, !f.single_arrival));
}

double mean_of(const std::vector<double>& pi) {
  double m = 0.0;
  for (std::size_t n = 0; n < pi.size(); ++n) m += static_cast<double>(n) * pi[n];
  return m;
}

double pi_at(const std::vector<double>& pi, std::size_t n) { return n < pi.size() ? pi[n] : 0.0; }

// ---- per-check rows -----------------------------------------------------------

void little_rows(const ExperimentConfig& c, const Trace& t, int rep, std::vector<CheckRow>& out) {
  for (auto conv : {Convention::LEFT_OPEN, Convention::RIGHT_OPEN}) {
    const auto l = check_little(t, c.warmup, conv);
    auto row = make_row("little", l.L, l.lambda * l.W, l.tolerance,
                        {{"replication", rep},
                         {"convention", conv == Convention::LEFT_OPEN ? "A<t<=D" : "A<=t<D"},
                         {"lambda", l.lambda},
                         {"W", l.W}});
    row.pass = l.pass && !l.insufficient_data;
    out.push_back(std::move(row));
  }
}

void little_observed_rows(const ExperimentConfig& c, const Trace& t, int rep, std::vector<CheckRow>& out) {
  for (auto rule : kAllRules)
    for (auto epoch : kAllEpochs) {
      const auto o = check_little_observed(t, rule, epoch, c.warmup);
      auto in = combo_inputs(rep, rule, epoch);
      in["lambda"] = o.lambda;
      in["W"] = o.W;
      in["W_obs"] = o.W_obs;
      in["residual_observed"] = o.residual_observed;
      in["residual_shift"] = o.residual_shift;
      auto row = make_row("little-observed", o.L_obs, o.class_target, o.tolerance, std::move(in));
      row.pass = o.pass && !o.insufficient_data;
      out.push_back(std::move(row));
    }
}

void pk_rows(const ExperimentConfig& c, const Trace& t, int rep, std::vector<CheckRow>& out) {
  const auto p = verify_pk(t, c.warmup);
  const json in = {{"replication", rep},
                   {"lambda", p.lambda},
                   {"rho", p.rho},
                   {"ES", p.moments.ES},
                   {"ES2", p.moments.ES2},
                   {"correlation_gap", p.correlation_gap}};
  out.push_back(relative_row("pk EWq", p.EWq_sim, p.EWq_formula, 0.02, in));
  out.push_back(relative_row("pk EV", p.EV_sim, p.EV_formula, 0.02, in));
}

void workload_rows(const ExperimentConfig& c, const Trace& t, int rep, std::vector<CheckRow>& out) {
  const auto h = check_h_lambda_g(t, remaining_work_cost(), c.warmup);
  auto row = make_row("workload H=lambda*G", h.H, h.lambda * h.G, h.tolerance,
                      {{"replication", rep}, {"cost", "remaining-work"}, {"lambda", h.lambda}, {"G", h.G}});
  row.pass = h.pass;
  out.push_back(std::move(row));

  const auto m = workload_moments(t, c.warmup);
  double sum_w = 0.0;
  std::size_t n = 0;
  for (const auto& cu : t.customers) {
    if (cu.arrival <= c.warmup || cu.departure > t.horizon) continue;
    sum_w += static_cast<double>(cu.wait());
    ++n;
  }
  const double W = n ? sum_w / static_cast<double>(n) : 0.0;
  out.push_back(relative_row("workload W=Wq+ES", W, m.EWq + m.ES, 0.01,
                             {{"replication", rep}, {"EWq", m.EWq}, {"ES", m.ES}}));
}

void busy_rows(const ExperimentConfig& c, const Trace& t, int rep, std::vector<CheckRow>& out) {
  const auto cs = detect_cycles(t);
  const auto sr = state_rates(t);
  const json base = {{"replication", rep}, {"cycles", cs.cycles.size()}};
  if (cs.cycles.empty() || !sr.alpha.contains(0) || sr.pi.size() < 2) {
    auto row = make_row("busy cycles", 0.0, 1.0, 0.0, base);
    row.pass = false;
    out.push_back(std::move(row));
    return;
  }
  const double pi0 = sr.pi[0], alpha0 = sr.alpha.at(0);
  auto means_rows = [&](const std::string& label, const BusyMeans& f, double tol, json in) {
    out.push_back(relative_row(label + " I", cs.means.I, f.I, tol, in));
    out.push_back(relative_row(label + " C", cs.means.C, f.C, tol, in));
    out.push_back(relative_row(label + " B", cs.means.B, f.B, tol, in));
    out.push_back(relative_row(label + " E", cs.means.E, f.E, tol, in));
  };
  json measured = base;
  measured["pi0"] = pi0;
  measured["alpha0"] = alpha0;
  measured["alpha"] = sr.arrival_rate;
  means_rows("busy measured-rates", theorem65(pi0, alpha0, sr.arrival_rate), 0.01, measured);

  std::size_t broken = 0;
  for (const auto& cy : cs.cycles) broken += cy.C != cy.B + cy.I || !(cy.U < cy.V) || cy.E < 1;
  out.push_back(make_row("busy C=B+I", static_cast<double>(broken), 0.0, 0.0, base));

  out.push_back(make_row("busy rate-identity", alpha0 * pi0, sr.arrival_rate * sr.arrivals_find_empty, 1e-12,
                         {{"replication", rep}, {"arrivals_find_empty", sr.arrivals_find_empty}}));

  if (single_server(c) || c.arrival_kind == ArrivalKind::EXPLICIT) {
    for (auto rule : kAllRules)
      for (auto epoch : kAllEpochs) {
        if (classify(rule, epoch) != CoherenceClass::COHERENT) continue;
        const auto oc = detect_cycles(t, rule, epoch);
        const std::size_t m = std::min(oc.cycles.size(), cs.cycles.size());
        std::size_t differ = std::max(oc.cycles.size(), cs.cycles.size()) - m > 1 ? 1 : 0;
        for (std::size_t k = 0; k < m; ++k) {
          const auto& a = cs.cycles[k];
          const auto& b = oc.cycles[k];
          differ += a.B != b.B || a.C != b.C || a.I != b.I || a.E != b.E;
        }
        auto in = combo_inputs(rep, rule, epoch);
        in["cycles"] = m;
        out.push_back(make_row("busy coherent-invariance", static_cast<double>(differ), 0.0, 0.0, std::move(in)));
      }
  }

  if (!(c.model.service.is_geometric() && single_server(c))) return;
  json model = base;
  if (c.arrival_kind == ArrivalKind::BERNOULLI || c.arrival_kind == ArrivalKind::RENEWAL) {
    const auto f = c.arrival_kind == ArrivalKind::BERNOULLI
                       ? DiscreteDist::geometric(c.alpha)
                       : std::get<RenewalArrivals>(c.model.arrivals).interarrival;
    const auto root = sigma_solve(f, c.beta);
    model["sigma"] = root.sigma;
    model["sigma_star"] = root.sigma_star;
    means_rows("busy model", ggeo1_busy(c.alpha, root.sigma_star, c.alpha / c.beta), kBusyModelTol, model);
  } else if (c.arrival_kind == ArrivalKind::FINITE) {
    const auto pi = finite_pop_pi(c);
    model["pi0"] = pi[0];
    model["L"] = mean_of(pi);
    means_rows("busy model", finite_pop_busy(c.population, c.alpha, pi[0], mean_of(pi)), kBusyFiniteTol, model);
  }
}

void dist_rows_for(const ExperimentConfig& c, const Trace& t, int rep, Combo combo, std::vector<CheckRow>& out,
                   Table* table) {
  const auto e = time_averages(t, combo.rule, combo.epoch, c.warmup);
  const double tol = 3.0 / std::sqrt(static_cast<double>(c.horizon));
  const auto cls = classify(combo.rule, combo.epoch);
  const BGeom1Params p{c.alpha, c.beta, cls};
  const std::size_t states = std::max<std::size_t>(e.pi_obs.size(), 11);
  for (std::size_t n = 0; n < states; ++n) {
    const double want = bgeom1_pi_at(p, static_cast<int>(n));
    const double got = pi_at(e.pi_obs, n);
    auto in = combo_inputs(rep, combo.rule, combo.epoch);
    in["n"] = n;
    out.push_back(make_row("dist pi", got, want, tol, std::move(in)));
    if (table) table->rows.push_back({n, want, got, std::abs(got - want)});
  }
  auto in = combo_inputs(rep, combo.rule, combo.epoch);
  out.push_back(relative_row("dist L", e.L_obs, bgeom1_L(p), 0.01, std::move(in)));
}

void dist_rows(const ExperimentConfig& c, const Trace& t, int rep, std::vector<CheckRow>& out) {
  if (c.arrival_kind == ArrivalKind::FINITE) {
    const auto pi = finite_pop_pi(c);
    const auto h = histogram(queue_path(t), c.warmup + 1, t.horizon);
    const double tol = 3.0 / std::sqrt(static_cast<double>(c.horizon));
    for (std::size_t n = 0; n < pi.size(); ++n)
      out.push_back(make_row("dist finite-population pi", pi_at(h, n), pi[n], tol, {{"replication", rep}, {"n", n}}));
    return;
  }
  for (auto cls : {CoherenceClass::COHERENT, CoherenceClass::SUB_COHERENT, CoherenceClass::SUPER_COHERENT})
    dist_rows_for(c, t, rep, representative(cls), out, nullptr);
}

void table61_rows(const ExperimentConfig& c, const Trace& t, int rep, std::vector<CheckRow>& out, Table* table) {
  for (auto rule : kAllRules)
    for (auto epoch : kAllEpochs) {
      const auto cls = classify(rule, epoch);
      const auto h = histogram(observed_path(t, rule, epoch), c.warmup + 1, t.horizon);
      const double got = 1.0 - pi_at(h, 0);
      const double want = one_or_more({c.alpha, c.beta, cls});
      out.push_back(relative_row("table61 1-pi(0)", got, want, 0.01, combo_inputs(rep, rule, epoch)));
      if (table)
        table->rows.push_back({std::string(to_string(rule)), std::string(to_string(epoch)),
                               std::string(to_string(cls)), want, got, got - want});
    }
}

void utilization_rows(const ExperimentConfig& c, const Trace& t, int rep, std::vector<CheckRow>& out) {
  const int servers = c.server_count();
  const auto u = utilization(t, servers, c.warmup);
  const double load = c.alpha * c.model.service.mean();
  out.push_back(relative_row("utilization busy-servers", u.total, load, 0.02,
                             {{"replication", rep}, {"servers", servers}, {"per_server", u.per_server}}));
  if (servers == 1) {
    const auto h = histogram(queue_path(t), c.warmup + 1, t.horizon);
    out.push_back(relative_row("utilization 1-pi(0)", 1.0 - pi_at(h, 0), load, 0.01, {{"replication", rep}}));
  }
}

std::vector<CheckRow> verify_rows(const ExperimentConfig& c, const Trace& t, int rep) {
  std::vector<CheckRow> out;
  for (const auto& check : c.checks) {
    if (not_applicable(c, check)) continue;
    if (check == "little") little_rows(c, t, rep, out);
    else if (check == "little-observed") little_observed_rows(c, t, rep, out);
    else if (check == "pk") pk_rows(c, t, rep, out);
    else if (check == "workload") workload_rows(c, t, rep, out);
    else if (check == "busy") busy_rows(c, t, rep, out);
    else if (check == "dist") dist_rows(c, t, rep, out);
    else if (check == "table61") table61_rows(c, t, rep, out, nullptr);
    else if (check == "utilization") utilization_rows(c, t, rep, out);
  }
  return out;
}

Report base_report(std::string command, const ExperimentConfig& c) {
  Report r;
  r.command = std::move(command);
  r.config = config_json(c);
  return r;
}

void finish(Report& r) {
  r.pass = all_pass(r.rows);
}

void require_bgeom1(const ExperimentConfig& c, const char* command) {
  if (!c.is_bgeom1())
    throw ConfigError(std::string(command) + ": needs B/Geom/1 (bernoulli arrivals, geometric service, fifo1)");
}

// ---- rendering --------------------------------------------------------------

std::string csv_field(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + '"';
}

std::string text_cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) {
    std::ostringstream s;
    s << std::setprecision(6) << v.get<double>();
    return s.str();
  }
  return v.dump();
}

void render_rows_text(std::ostream& out, const std::vector<CheckRow>& rows) {
  out << std::left << std::setw(28) << "check" << std::right << std::setw(14) << "simulated" << std::setw(14)
      << "formula" << std::setw(14) << "residual" << std::setw(14) << "tolerance" << "  result  inputs\n";
  for (const auto& r : rows) {
    out << std::left << std::setw(28) << r.check << std::right << std::setprecision(6) << std::setw(14)
        << r.simulated << std::setw(14) << r.formula << std::setw(14) << r.residual << std::setw(14) << r.tolerance
        << "  " << (r.pass ? "PASS" : "FAIL") << "    " << r.inputs.dump() << '\n';
  }
}

}  // namespace

json config_json(const ExperimentConfig& c) {
  json j = {{"T", c.horizon},
            {"warmup", c.warmup},
            {"seed", c.seed},
            {"replications", c.replications},
            {"service", to_string(c.model.service)},
            {"servers", c.server_count()},
            {"checks", c.checks}};
  switch (c.arrival_kind) {
    case ArrivalKind::BERNOULLI: j["arrivals"] = "bernoulli"; j["alpha"] = c.alpha; break;
    case ArrivalKind::RENEWAL:
      j["arrivals"] = "renewal";
      j["interarrival"] = to_string(std::get<RenewalArrivals>(c.model.arrivals).interarrival);
      break;
    case ArrivalKind::FINITE:
      j["arrivals"] = "finite";
      j["alpha"] = c.alpha;
      j["population"] = c.population;
      j["single_arrival"] = std::get<FinitePopulationArrivals>(c.model.arrivals).single_arrival;
      break;
    case ArrivalKind::EXPLICIT:
      j["arrivals"] = "explicit";
      j["slots"] = std::get<ExplicitArrivals>(c.model.arrivals).slots;
      break;
  }
  return j;
}

std::vector<CheckRow> run_replications(const ExperimentConfig& c,
                                       const std::function<std::vector<CheckRow>(const Trace&, int)>& body) {
  require_stable(c);
  const int n = c.replications;
  std::vector<std::vector<CheckRow>> results(static_cast<std::size_t>(n));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i; (i = next.fetch_add(1)) < n;) {
      try {
        const auto trace = simulate(c.model, c.seed + static_cast<std::uint64_t>(i), c.horizon);
        results[static_cast<std::size_t>(i)] = body(trace, i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = std::min<unsigned>(hw, static_cast<unsigned>(n));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<CheckRow> rows;
  for (auto& r : results) std::move(r.begin(), r.end(), std::back_inserter(rows));
  return rows;
}

Report cmd_classify(const std::optional<ClassificationTable>& golden) {
  Report r;
  r.command = "classify";
  const auto got = classification_table();
  const auto& want = golden ? *golden : reference_table();
  const auto diff = diff_tables(got, want);
  r.rows.push_back(make_row("classify matching-cells", static_cast<double>(30 - diff.size()), 30.0, 0.0));
  r.rows.push_back(make_row("classify coherent-count", coherent_count(got), coherent_count(want), 0.0));
  json cells = json::array();
  for (const auto& d : diff)
    cells.push_back({{"rule", std::string(to_string(d.rule))},
                     {"epoch", std::string(to_string(d.epoch))},
                     {"computed", std::string(to_string(d.got))},
                     {"golden", std::string(to_string(d.want))}});
  json actual_wait = json::array();
  for (auto rule : kAllRules)
    actual_wait.push_back({{"rule", std::string(to_string(rule))},
                           {"random", counts_actual_wait(got, rule, ObservationEpoch::RANDOM_OBSERVER)},
                           {"outside", counts_actual_wait(got, rule, ObservationEpoch::OUTSIDE_OBSERVER)}});
  r.details = {{"table", table_json(got)}, {"counts_actual_wait", actual_wait}, {"diff", cells},
               {"coherent", coherent_count(got)}};
  Table t;
  t.header = {"rule", "epoch", "class"};
  for (auto rule : kAllRules)
    for (auto epoch : kAllEpochs)
      t.rows.push_back({std::string(to_string(rule)), std::string(to_string(epoch)),
                        std::string(to_string(got[static_cast<std::size_t>(rule)][static_cast<std::size_t>(epoch)]))});
  r.table = std::move(t);
  r.table_in_text = false;
  r.table_in_json = false;
  finish(r);
  return r;
}

Report cmd_verify(const ExperimentConfig& c) {
  auto r = base_report("verify", c);
  for (const auto& check : c.checks)
    if (auto why = not_applicable(c, check)) r.skipped.push_back({check, *why});
  r.rows = run_replications(c, [&](const Trace& t, int rep) { return verify_rows(c, t, rep); });
  finish(r);
  return r;
}

Report cmd_dist(const ExperimentConfig& c) {
  require_bgeom1(c, "dist");
  auto r = base_report("dist", c);
  Combo combo{};
  if (c.rule && c.epoch) {
    combo = {*c.rule, *c.epoch};
  } else {
    combo = representative(c.cls.value_or(CoherenceClass::COHERENT));
  }
  Table table;
  table.header = {"n", "pi_analytic", "pi_simulated", "abs_diff"};
  r.rows = run_replications(c, [&](const Trace& t, int rep) {
    std::vector<CheckRow> rows;
    dist_rows_for(c, t, rep, combo, rows, rep == 0 ? &table : nullptr);
    return rows;
  });
  const auto cls = classify(combo.rule, combo.epoch);
  const auto& last = r.rows.back();
  r.details = {{"rule", std::string(to_string(combo.rule))},
               {"epoch", std::string(to_string(combo.epoch))},
               {"class", std::string(to_string(cls))},
               {"L_analytic", bgeom1_L({c.alpha, c.beta, cls})},
               {"L_simulated", last.simulated}};
  r.table = std::move(table);
  finish(r);
  return r;
}

Report cmd_busy(const ExperimentConfig& c) {
  if (c.server_count() == 0) throw ConfigError("busy: needs a finite number of servers");
  auto r = base_report("busy", c);
  Table table;
  table.header = {"k", "U", "V", "C", "B", "I", "E"};
  json means;
  r.rows = run_replications(c, [&](const Trace& t, int rep) {
    std::vector<CheckRow> rows;
    busy_rows(c, t, rep, rows);
    if (rep == 0) {
      const auto cs = detect_cycles(t);
      for (std::size_t k = 0; k < cs.cycles.size(); ++k) {
        const auto& cy = cs.cycles[k];
        table.rows.push_back({k + 1, cy.U, cy.V, cy.C, cy.B, cy.I, cy.E});
      }
      means = {{"cycles", cs.cycles.size()}, {"I", cs.means.I}, {"C", cs.means.C}, {"B", cs.means.B},
               {"E", cs.means.E}};
    }
    return rows;
  });
  r.details = {{"means", means}};
  r.table = std::move(table);
  r.table_in_text = false;
  r.table_in_json = false;
  finish(r);
  return r;
}

Report cmd_pk(const ExperimentConfig& c) {
  if (not_applicable(c, "pk")) throw ConfigError("pk: needs Bernoulli arrivals and one server");
  auto r = base_report("pk", c);
  r.rows = run_replications(c, [&](const Trace& t, int rep) {
    std::vector<CheckRow> rows;
    pk_rows(c, t, rep, rows);
    workload_rows(c, t, rep, rows);
    return rows;
  });
  finish(r);
  return r;
}

Report cmd_table61(const ExperimentConfig& c) {
  require_bgeom1(c, "table61");
  auto r = base_report("table61", c);
  Table table;
  table.header = {"rule", "epoch", "class", "formula", "simulated", "residual"};
  r.rows = run_replications(c, [&](const Trace& t, int rep) {
    std::vector<CheckRow> rows;
    table61_rows(c, t, rep, rows, rep == 0 ? &table : nullptr);
    return rows;
  });
  r.details = {{"rho", c.alpha / c.beta},
               {"gamma", BGeom1Params{c.alpha, c.beta}.gamma()},
               {"rendered", render_table61(c.alpha, c.beta)}};
  r.table = std::move(table);
  finish(r);
  return r;
}

Report cmd_simulate(const ExperimentConfig& c) {
  require_stable(c);
  auto r = base_report("simulate", c);
  const auto trace = simulate(c.model, c.seed, c.horizon);
  const auto rule = c.rule.value_or(SchedulingRule::EAS);
  const auto epoch = c.epoch.value_or(ObservationEpoch::OUTSIDE_OBSERVER);
  r.details = {{"estimates", to_json(time_averages(trace, rule, epoch, c.warmup))},
               {"customers", trace.size()}};
  Table table;
  table.header = {"k", "A", "S", "Astart", "D"};
  for (std::size_t k = 0; k < trace.size(); ++k) {
    const auto& cu = trace.customers[k];
    table.rows.push_back({k + 1, cu.arrival, cu.service, cu.start, cu.departure});
  }
  r.table = std::move(table);
  r.table_in_text = false;
  r.table_in_json = false;
  return r;
}

void render(std::ostream& out, const Report& r, const std::string& format) {
  if (format == "json") {
    json j = {{"command", r.command}, {"config", r.config}, {"pass", r.pass}, {"details", r.details}};
    json rows = json::array();
    for (const auto& row : r.rows) rows.push_back(to_json(row));
    j["rows"] = std::move(rows);
    json skipped = json::array();
    for (const auto& s : r.skipped) skipped.push_back({{"check", s.check}, {"reason", s.reason}});
    j["skipped"] = std::move(skipped);
    if (r.table && r.table_in_json) j["table"] = {{"header", r.table->header}, {"rows", r.table->rows}};
    out << j.dump(2) << '\n';
    return;
  }
  if (format == "csv") {
    if (r.table) {
      for (std::size_t i = 0; i < r.table->header.size(); ++i) out << (i ? "," : "") << r.table->header[i];
      out << '\n';
      for (const auto& row : r.table->rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
        out << '\n';
      }
      return;
    }
    out << "check,inputs,simulated,formula,residual,tolerance,pass\n";
    for (const auto& row : r.rows)
      out << csv_field(row.check) << ',' << csv_field(row.inputs.dump()) << ',' << json(row.simulated).dump()
          << ',' << json(row.formula).dump() << ',' << json(row.residual).dump() << ','
          << json(row.tolerance).dump() << ',' << (row.pass ? "true" : "false") << '\n';
    return;
  }
  // text
  if (r.command == "classify") {
    out << "Observed waiting time equals the actual one (random / outside observer):\n";
    for (const auto& row : r.details.at("counts_actual_wait"))
      out << "  " << std::left << std::setw(8) << row.at("rule").get<std::string>() << std::setw(5)
          << (row.at("random").get<bool>() ? "yes" : "no") << (row.at("outside").get<bool>() ? "yes" : "no")
          << '\n';
    out << '\n' << render_table(table_from_json(r.details.at("table"))) << '\n';
    out << "coherent cells: " << r.details.at("coherent").get<int>() << " of 30\n";
    for (const auto& d : r.details.at("diff"))
      out << "MISMATCH " << d.at("rule").get<std::string>() << ' ' << d.at("epoch").get<std::string>()
          << ": computed " << d.at("computed").get<std::string>() << ", golden "
          << d.at("golden").get<std::string>() << '\n';
    out << (r.pass ? "classification matches the golden table\n" : "classification differs from the golden table\n");
    return;
  }
  if (r.command == "table61") out << r.details.at("rendered").get<std::string>() << '\n';
  if (r.command == "simulate") {
    out << "customers: " << r.details.at("customers").get<std::size_t>() << '\n';
    for (const auto& [k, v] : r.details.at("estimates").items()) out << k << ": " << v.dump() << '\n';
    return;
  }
  if (r.table && r.table_in_text) {
    for (const auto& h : r.table->header) out << std::setw(14) << h;
    out << '\n';
    for (const auto& row : r.table->rows) {
      for (const auto& v : row) out << std::setw(14) << text_cell(v);
      out << '\n';
    }
    out << '\n';
  }
  if (r.command == "dist")
    out << "L analytic " << r.details.at("L_analytic").get<double>() << ", simulated "
        << r.details.at("L_simulated").get<double>() << "\n\n";
  if (r.command == "busy" && r.details.contains("means")) out << "means " << r.details.at("means").dump() << "\n\n";
  render_rows_text(out, r.rows);
  for (const auto& s : r.skipped) out << "skipped " << s.check << ": " << s.reason << '\n';
  out << (r.pass ? "ALL PASS\n" : "SOME CHECKS FAILED\n");
}

}  // namespace dtq
