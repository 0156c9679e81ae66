#include "dtq/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

namespace dtq {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in{std::string(s)};
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& s, const std::string& what) {
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) throw ConfigError(what + ": not a number: '" + s + "'");
  return v;
}

std::int64_t to_int(const std::string& s, const std::string& what) {
  std::int64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) throw ConfigError(what + ": not an integer: '" + s + "'");
  return v;
}

bool to_bool(const std::string& s, const std::string& what) {
  const auto v = lower(s);
  if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
  if (v == "false" || v == "no" || v == "0" || v == "off") return false;
  throw ConfigError(what + ": expected true/false, got '" + s + "'");
}

using Section = std::map<std::string, std::pair<std::string, int>>;  // key -> (value, line)

const std::map<std::string, std::vector<std::string>> kKnownKeys = {
    {"model",
     {"arrivals", "alpha", "beta", "interarrival", "service", "discipline", "servers", "population",
      "single_arrival", "random_assignment", "slots"}},
    {"sim", {"t", "horizon", "warmup", "seed", "replications"}},
    {"checks", {"run", "rule", "epoch", "class"}},
    {"output", {"format", "path"}},
};

}  // namespace

bool ExperimentConfig::is_bgeom1() const {
  return arrival_kind == ArrivalKind::BERNOULLI && model.service.is_geometric() &&
         std::holds_alternative<Fifo1>(model.discipline);
}

int ExperimentConfig::server_count() const {
  if (std::holds_alternative<InfiniteServer>(model.discipline)) return 0;
  if (const auto* f = std::get_if<FifoC>(&model.discipline)) return f->servers;
  return 1;
}

DiscreteDist parse_dist(std::string_view text) {
  const auto s = trim(text);
  const auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')') throw ConfigError("distribution: expected name(args), got '" + s + "'");
  const auto name = lower(trim(s.substr(0, open)));
  const auto args = split_list(std::string_view(s).substr(open + 1, s.size() - open - 2));
  try {
    if (name == "geometric" && args.size() == 1) return DiscreteDist::geometric(to_double(args[0], "geometric"));
    if (name == "point" && args.size() == 1) return DiscreteDist::point(to_int(args[0], "point"));
    if (name == "table" && args.size() >= 2) {
      std::vector<double> pmf;
      for (std::size_t i = 1; i < args.size(); ++i) pmf.push_back(to_double(args[i], "table"));
      return DiscreteDist::table(to_int(args[0], "table"), std::move(pmf));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("distribution: ") + e.what());
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("distribution: ") + e.what());
  }
  throw ConfigError("distribution: unknown form '" + s + "'");
}

std::string to_string(const DiscreteDist& d) {
  std::ostringstream out;
  out << std::setprecision(17);
  if (d.is_geometric()) {
    out << "geometric(" << d.geometric_p() << ')';
  } else if (d.support_min() == d.support_max()) {
    out << "point(" << d.support_min() << ')';
  } else {
    out << "table(" << d.support_min();
    for (auto n = d.support_min(); n <= d.support_max(); ++n) out << ", " << d.pmf(n);
    out << ')';
  }
  return out.str();
}

ExperimentConfig parse_config(std::istream& in, const std::string& source) {
  std::map<std::string, Section> sections;
  std::string line, current;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    const auto body = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (body.empty()) continue;
    const auto where = source + ":" + std::to_string(lineno);
    if (body.front() == '[') {
      if (body.back() != ']') throw ConfigError(where + ": malformed section header");
      current = lower(trim(body.substr(1, body.size() - 2)));
      if (!kKnownKeys.contains(current)) throw ConfigError(where + ": unknown section [" + current + "]");
      sections[current];
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    if (current.empty()) throw ConfigError(where + ": key outside any section");
    const auto key = lower(trim(body.substr(0, eq)));
    const auto& known = kKnownKeys.at(current);
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError(where + ": unknown key '" + key + "' in [" + current + "]");
    if (sections[current].contains(key)) throw ConfigError(where + ": duplicate key '" + key + "'");
    sections[current][key] = {trim(body.substr(eq + 1)), lineno};
  }

  auto get = [&](const std::string& sec, const std::string& key) -> std::optional<std::string> {
    const auto s = sections.find(sec);
    if (s == sections.end()) return std::nullopt;
    const auto k = s->second.find(key);
    if (k == s->second.end()) return std::nullopt;
    return k->second.first;
  };
  auto at = [&](const std::string& sec, const std::string& key) {
    return source + " [" + sec + "] " + key;
  };

  ExperimentConfig c;
  c.checks.clear();

  // model
  const auto kind = lower(get("model", "arrivals").value_or("bernoulli"));
  if (auto v = get("model", "alpha")) c.alpha = to_double(*v, at("model", "alpha"));
  if (auto v = get("model", "beta")) c.beta = to_double(*v, at("model", "beta"));
  if (auto v = get("model", "service")) {
    c.model.service = parse_dist(*v);
    if (c.model.service.is_geometric()) {
      if (c.beta != 0.0 && c.beta != c.model.service.geometric_p())
        throw ConfigError(at("model", "beta") + ": disagrees with service");
      c.beta = c.model.service.geometric_p();
    }
  } else if (c.beta > 0.0) {
    c.model.service = DiscreteDist::geometric(c.beta);
  } else {
    throw ConfigError(source + ": [model] needs service or beta");
  }
  if (!c.model.service.is_geometric()) c.beta = 0.0;
  if (c.model.service.support_min() < 1) throw ConfigError(at("model", "service") + ": service times must be >= 1");

  if (kind == "bernoulli") {
    c.arrival_kind = ArrivalKind::BERNOULLI;
    if (!(c.alpha > 0.0 && c.alpha < 1.0)) throw ConfigError(at("model", "alpha") + ": must lie in (0,1)");
    c.model.arrivals = BernoulliArrivals{c.alpha};
  } else if (kind == "renewal") {
    c.arrival_kind = ArrivalKind::RENEWAL;
    const auto v = get("model", "interarrival");
    if (!v) throw ConfigError(source + ": renewal arrivals need [model] interarrival");
    auto f = parse_dist(*v);
    if (f.support_min() < 1) throw ConfigError(at("model", "interarrival") + ": gaps must be >= 1");
    c.alpha = 1.0 / f.mean();
    c.model.arrivals = RenewalArrivals{std::move(f)};
  } else if (kind == "finite") {
    c.arrival_kind = ArrivalKind::FINITE;
    const auto n = get("model", "population");
    if (!n) throw ConfigError(source + ": finite arrivals need [model] population");
    c.population = static_cast<int>(to_int(*n, at("model", "population")));
    if (c.population < 1) throw ConfigError(at("model", "population") + ": must be >= 1");
    if (!(c.alpha > 0.0 && c.alpha < 1.0)) throw ConfigError(at("model", "alpha") + ": must lie in (0,1)");
    const bool single = to_bool(get("model", "single_arrival").value_or("false"), at("model", "single_arrival"));
    if (single && c.population * c.alpha > 1.0) throw ConfigError(at("model", "single_arrival") + ": needs N alpha <= 1");
    c.model.arrivals = FinitePopulationArrivals{c.population, c.alpha, c.model.service, single};
  } else if (kind == "explicit") {
    c.arrival_kind = ArrivalKind::EXPLICIT;
    const auto v = get("model", "slots");
    if (!v) throw ConfigError(source + ": explicit arrivals need [model] slots");
    ExplicitArrivals e;
    for (const auto& s : split_list(*v)) e.slots.push_back(to_int(s, at("model", "slots")));
    c.model.arrivals = std::move(e);
  } else {
    throw ConfigError(at("model", "arrivals") + ": unknown kind '" + kind + "'");
  }

  const auto disc = lower(get("model", "discipline").value_or("fifo1"));
  if (disc == "fifo1") {
    c.model.discipline = Fifo1{};
  } else if (disc == "fifo-c" || disc == "fifoc") {
    FifoC f;
    f.servers = static_cast<int>(to_int(get("model", "servers").value_or("1"), at("model", "servers")));
    if (f.servers < 1) throw ConfigError(at("model", "servers") + ": must be >= 1");
    f.random_assignment =
        to_bool(get("model", "random_assignment").value_or("false"), at("model", "random_assignment"));
    c.model.discipline = f;
  } else if (disc == "infinite") {
    c.model.discipline = InfiniteServer{};
  } else {
    throw ConfigError(at("model", "discipline") + ": unknown discipline '" + disc + "'");
  }
  if (c.arrival_kind == ArrivalKind::FINITE && !std::holds_alternative<Fifo1>(c.model.discipline))
    throw ConfigError(source + ": finite population arrivals run on fifo1 only");
  c.servers = c.server_count();

  // sim
  auto horizon = get("sim", "t");
  if (!horizon) horizon = get("sim", "horizon");
  if (horizon) c.horizon = to_int(*horizon, at("sim", "T"));
  c.warmup = get("sim", "warmup") ? to_int(*get("sim", "warmup"), at("sim", "warmup")) : c.horizon / 10;
  if (auto v = get("sim", "seed")) {
    const auto s = to_int(*v, at("sim", "seed"));
    if (s < 0) throw ConfigError(at("sim", "seed") + ": must be >= 0");
    c.seed = static_cast<std::uint64_t>(s);
  }
  if (auto v = get("sim", "replications")) c.replications = static_cast<int>(to_int(*v, at("sim", "replications")));
  if (!(c.horizon > c.warmup && c.warmup >= 0)) throw ConfigError(source + ": need T > warmup >= 0");
  if (c.replications < 1) throw ConfigError(at("sim", "replications") + ": must be >= 1");

  // checks
  if (auto v = get("checks", "run")) {
    for (auto& name : split_list(*v)) {
      name = lower(name);
      if (name == "all") {
        c.checks = registered_checks();
        continue;
      }
      const auto& known = registered_checks();
      if (std::find(known.begin(), known.end(), name) == known.end())
        throw ConfigError(at("checks", "run") + ": unknown check '" + name + "'");
      if (std::find(c.checks.begin(), c.checks.end(), name) == c.checks.end()) c.checks.push_back(name);
    }
  } else {
    c.checks = registered_checks();
  }
  try {
    if (auto v = get("checks", "rule")) c.rule = parse_rule(*v);
    if (auto v = get("checks", "epoch")) c.epoch = parse_epoch(*v);
    if (auto v = get("checks", "class")) c.cls = parse_class(*v);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(source + " [checks]: " + e.what());
  }

  // output
  c.format = lower(get("output", "format").value_or("text"));
  if (c.format != "text" && c.format != "json" && c.format != "csv")
    throw ConfigError(at("output", "format") + ": expected text, json or csv");
  c.out_path = get("output", "path").value_or("");
  if (c.out_path == "-") c.out_path.clear();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in, path);
}

ExperimentConfig reference_config() {
  std::istringstream in(
      "[model]\n"
      "arrivals = bernoulli\n"
      "alpha = 0.3\n"
      "service = geometric(0.5)\n"
      "discipline = fifo1\n"
      "[sim]\n"
      "T = 1000000\n"
      "warmup = 100000\n"
      "seed = 42\n"
      "replications = 1\n"
      "[checks]\n"
      "run = all\n");
  return parse_config(in, "<reference>");
}

std::string render_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "[model]\n";
  switch (c.arrival_kind) {
    case ArrivalKind::BERNOULLI: out << "arrivals = bernoulli\nalpha = " << c.alpha << '\n'; break;
    case ArrivalKind::RENEWAL:
      out << "arrivals = renewal\ninterarrival = "
          << to_string(std::get<RenewalArrivals>(c.model.arrivals).interarrival) << '\n';
      break;
    case ArrivalKind::FINITE: {
      const auto& f = std::get<FinitePopulationArrivals>(c.model.arrivals);
      out << "arrivals = finite\nalpha = " << c.alpha << "\npopulation = " << c.population
          << "\nsingle_arrival = " << (f.single_arrival ? "true" : "false") << '\n';
      break;
    }
    case ArrivalKind::EXPLICIT: {
      out << "arrivals = explicit\nslots = ";
      const auto& s = std::get<ExplicitArrivals>(c.model.arrivals).slots;
      for (std::size_t i = 0; i < s.size(); ++i) out << (i ? ", " : "") << s[i];
      out << '\n';
      break;
    }
  }
  out << "service = " << to_string(c.model.service) << '\n';
  if (c.servers == 0) {
    out << "discipline = infinite\n";
  } else if (const auto* f = std::get_if<FifoC>(&c.model.discipline)) {
    out << "discipline = fifo-c\nservers = " << f->servers
        << "\nrandom_assignment = " << (f->random_assignment ? "true" : "false") << '\n';
  } else {
    out << "discipline = fifo1\n";
  }
  out << "[sim]\nT = " << c.horizon << "\nwarmup = " << c.warmup << "\nseed = " << c.seed
      << "\nreplications = " << c.replications << '\n';
  out << "[checks]\nrun = ";
  for (std::size_t i = 0; i < c.checks.size(); ++i) out << (i ? ", " : "") << c.checks[i];
  out << '\n';
  if (c.rule) out << "rule = " << to_string(*c.rule) << '\n';
  if (c.epoch) out << "epoch = " << to_string(*c.epoch) << '\n';
  if (c.cls) out << "class = " << to_string(*c.cls) << '\n';
  out << "[output]\nformat = " << c.format << '\n';
  if (!c.out_path.empty()) out << "path = " << c.out_path << '\n';
  return out.str();
}

const std::vector<std::string>& registered_checks() {
  static const std::vector<std::string> names = {"little", "little-observed", "pk",    "workload",
                                                 "busy",   "dist",            "table61", "utilization"};
  return names;
}

void require_stable(const ExperimentConfig& c) {
  if (c.arrival_kind == ArrivalKind::FINITE || c.arrival_kind == ArrivalKind::EXPLICIT || c.servers == 0) return;
  const double rho = offered_load(c.model);
  if (rho >= 1.0) {
    std::ostringstream msg;
    msg << "unstable parameters: traffic intensity " << rho << " >= 1";
    throw std::domain_error(msg.str());
  }
}

}  // namespace dtq
