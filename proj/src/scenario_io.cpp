#include "mwl/scenario_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mwl {

namespace {

using nlohmann::json;

json vec_to_json(const Vec& v) { return json(v); }

Vec vec_from_json(const json& j) { return j.get<Vec>(); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out.good()) throw std::runtime_error("failed writing '" + path + "'");
}

std::string kind_name(ConvexTerm::Kind kind) {
  return kind == ConvexTerm::Kind::quadratic ? "quadratic" : "neg_log1p";
}

ConvexTerm::Kind kind_from_name(const std::string& name) {
  if (name == "quadratic") return ConvexTerm::Kind::quadratic;
  if (name == "neg_log1p") return ConvexTerm::Kind::neg_log1p;
  throw std::invalid_argument("scenario: unknown nonlinear term kind '" + name + "'");
}

}  // namespace

std::string scenario_to_json(const Scenario& scenario) {
  const ScenarioModel& m = scenario.model;
  const ObjectiveSpec& obj = scenario.objective;
  json j;
  j["name"] = m.name;
  j["K"] = m.K;
  j["L"] = m.L;
  j["M"] = m.M;
  j["sigma"] = m.sigma_default;
  j["actions"] = m.actions;

  json options = json::array();
  for (int k = 0; k < m.K; ++k) {
    json o;
    json support = json::array();
    for (const Vec& s : m.distributions[static_cast<std::size_t>(k)].support) {
      support.push_back(vec_to_json(s));
    }
    o["support"] = support;
    o["probabilities"] = vec_to_json(m.distributions[static_cast<std::size_t>(k)].probabilities);
    options.push_back(o);
  }
  j["options"] = options;

  json penalty = json::array(), arrival = json::array(), service = json::array();
  for (int k = 0; k < m.K; ++k) {
    json pk = json::array(), ak = json::array(), sk = json::array();
    for (std::size_t w = 0; w < m.table[static_cast<std::size_t>(k)].size(); ++w) {
      json pw = json::array(), aw = json::array(), sw = json::array();
      for (const SlotEffect& e : m.table[static_cast<std::size_t>(k)][w]) {
        pw.push_back(vec_to_json(e.x));
        aw.push_back(vec_to_json(e.A));
        sw.push_back(vec_to_json(e.mu));
      }
      pk.push_back(pw);
      ak.push_back(aw);
      sk.push_back(sw);
    }
    penalty.push_back(pk);
    arrival.push_back(ak);
    service.push_back(sk);
  }
  j["tables"] = {{"penalty", penalty}, {"arrival", arrival}, {"service", service}};

  j["bounds"] = {{"x_min", vec_to_json(m.bounds.x_min)},
                 {"x_max", vec_to_json(m.bounds.x_max)},
                 {"A_max", vec_to_json(m.bounds.A_max)},
                 {"mu_max", vec_to_json(m.bounds.mu_max)}};

  json nonlinear = json::array();
  for (std::size_t t = 0; t < obj.nonlinear.size(); ++t) {
    nonlinear.push_back({{"index", obj.nonlinear_indices[t]},
                         {"kind", kind_name(obj.nonlinear[t].kind)},
                         {"weight", obj.nonlinear[t].weight},
                         {"shift", obj.nonlinear[t].shift}});
  }
  json constraints = json::array();
  for (const ConstraintRow& row : obj.constraints) {
    constraints.push_back(
        {{"coeff", vec_to_json(row.h.coeff)}, {"offset", row.h.offset}, {"b", row.b}});
  }
  j["objective"] = {{"linear", {{"coeff", vec_to_json(obj.linear.coeff)}, {"offset", obj.linear.offset}}},
                    {"nonlinear", nonlinear},
                    {"constraints", constraints}};
  return j.dump(2) + "\n";
}

Scenario load_scenario_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("scenario: JSON parse error: ") + e.what());
  }

  Scenario sc;
  ScenarioModel& m = sc.model;
  try {
    m.name = j.at("name").get<std::string>();
    m.K = j.at("K").get<int>();
    m.L = j.at("L").get<int>();
    m.M = j.at("M").get<int>();
    m.sigma_default = j.value("sigma", 1.0);
    m.actions = j.at("actions").get<std::vector<std::string>>();

    const json& options = j.at("options");
    if (static_cast<int>(options.size()) != m.K) {
      throw std::invalid_argument("scenario: expected " + std::to_string(m.K) + " options, found " +
                                  std::to_string(options.size()));
    }
    for (const json& o : options) {
      OutcomeDistribution dist;
      for (const json& s : o.at("support")) dist.support.push_back(vec_from_json(s));
      dist.probabilities = vec_from_json(o.at("probabilities"));
      m.distributions.push_back(std::move(dist));
    }

    const json& tables = j.at("tables");
    const json& penalty = tables.at("penalty");
    const json& arrival = tables.at("arrival");
    const json& service = tables.at("service");
    m.table.resize(static_cast<std::size_t>(m.K));
    for (int k = 0; k < m.K; ++k) {
      const auto nk = penalty.at(static_cast<std::size_t>(k)).size();
      m.table[static_cast<std::size_t>(k)].resize(nk);
      for (std::size_t w = 0; w < nk; ++w) {
        const json& pw = penalty.at(static_cast<std::size_t>(k)).at(w);
        const json& aw = arrival.at(static_cast<std::size_t>(k)).at(w);
        const json& sw = service.at(static_cast<std::size_t>(k)).at(w);
        auto& row = m.table[static_cast<std::size_t>(k)][w];
        row.resize(pw.size());
        for (std::size_t i = 0; i < pw.size(); ++i) {
          row[i].x = vec_from_json(pw.at(i));
          row[i].A = vec_from_json(aw.at(i));
          row[i].mu = vec_from_json(sw.at(i));
        }
      }
    }

    const json& b = j.at("bounds");
    m.bounds.x_min = vec_from_json(b.at("x_min"));
    m.bounds.x_max = vec_from_json(b.at("x_max"));
    m.bounds.A_max = vec_from_json(b.at("A_max"));
    m.bounds.mu_max = vec_from_json(b.at("mu_max"));

    const json& jobj = j.at("objective");
    sc.objective.linear.coeff = vec_from_json(jobj.at("linear").at("coeff"));
    sc.objective.linear.offset = jobj.at("linear").value("offset", 0.0);
    for (const json& t : jobj.value("nonlinear", json::array())) {
      sc.objective.nonlinear_indices.push_back(t.at("index").get<int>());
      ConvexTerm term;
      term.kind = kind_from_name(t.at("kind").get<std::string>());
      term.weight = t.value("weight", 1.0);
      term.shift = t.value("shift", 0.0);
      sc.objective.nonlinear.push_back(term);
    }
    for (const json& c : jobj.value("constraints", json::array())) {
      ConstraintRow row;
      row.h.coeff = vec_from_json(c.at("coeff"));
      row.h.offset = c.value("offset", 0.0);
      row.b = c.at("b").get<double>();
      sc.objective.constraints.push_back(std::move(row));
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("scenario: malformed file: ") + e.what());
  }

  sc.model.validate();
  sc.objective.validate(sc.model.M);
  return sc;
}

Scenario load_scenario_file(const std::string& path) {
  try {
    return load_scenario_json(read_file(path));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void save_scenario_file(const Scenario& scenario, const std::string& path) {
  write_file(path, scenario_to_json(scenario));
}

Scenario resolve_scenario(const std::string& name_or_path) {
  if (is_builtin_scenario(name_or_path)) return build_scenario(name_or_path);
  return load_scenario_file(name_or_path);
}

std::string fstar_to_json(const FstarResult& result, double theta) {
  json j;
  j["theta"] = theta;
  j["feasible"] = result.feasible;
  j["value"] = result.value;
  j["optimality_gap_bound"] = result.optimality_gap_bound;
  j["certificate_margin"] = result.certificate_margin;
  j["certificate_ok"] = result.certificate_ok;
  j["certificate_vacuous"] = result.certificate_vacuous;
  j["message"] = result.message;
  if (result.feasible) {
    j["policy"] = {{"stage1", vec_to_json(result.policy.stage1)}};
    json stage2 = json::array();
    for (const auto& rows : result.policy.stage2) {
      json rk = json::array();
      for (const Vec& row : rows) rk.push_back(vec_to_json(row));
      stage2.push_back(rk);
    }
    j["policy"]["stage2"] = stage2;
    j["averages"] = {{"xbar", vec_to_json(result.averages.xbar)},
                     {"Abar", vec_to_json(result.averages.Abar)},
                     {"mubar", vec_to_json(result.averages.mubar)}};
  }
  return j.dump(2) + "\n";
}

FstarResult fstar_from_json(const std::string& text, double* theta_out) {
  const json j = json::parse(text);
  FstarResult r;
  if (theta_out != nullptr) *theta_out = j.at("theta").get<double>();
  r.feasible = j.at("feasible").get<bool>();
  r.value = j.at("value").get<double>();
  r.optimality_gap_bound = j.value("optimality_gap_bound", 0.0);
  r.certificate_margin = j.value("certificate_margin", 0.0);
  r.certificate_ok = j.value("certificate_ok", false);
  r.certificate_vacuous = j.value("certificate_vacuous", false);
  r.message = j.value("message", "");
  if (r.feasible) {
    r.policy.stage1 = vec_from_json(j.at("policy").at("stage1"));
    for (const json& rk : j.at("policy").at("stage2")) {
      std::vector<Vec> rows;
      for (const json& row : rk) rows.push_back(vec_from_json(row));
      r.policy.stage2.push_back(std::move(rows));
    }
    r.averages.xbar = vec_from_json(j.at("averages").at("xbar"));
    r.averages.Abar = vec_from_json(j.at("averages").at("Abar"));
    r.averages.mubar = vec_from_json(j.at("averages").at("mubar"));
  }
  return r;
}

void save_fstar_file(const FstarResult& result, double theta, const std::string& path) {
  write_file(path, fstar_to_json(result, theta));
}

FstarResult load_fstar_file(const std::string& path, double* theta_out) {
  return fstar_from_json(read_file(path), theta_out);
}

}  // namespace mwl
