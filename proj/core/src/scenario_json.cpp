#include "tsq/scenario_json.hpp"

#include <set>

#include <nlohmann/json.hpp>

#include "tsq/errors.hpp"

namespace tsq::tsv {
namespace {

using nlohmann::json;

json complex_to_json(const Complex& c) { return json::array({c.real(), c.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw ConfigError("complex values must be [re, im] pairs");
  }
  return Complex{j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(complex_to_json(m(r, c)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXcd matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) {
    throw ConfigError("matrix must be a nonempty array of rows");
  }
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (static_cast<Eigen::Index>(j[static_cast<std::size_t>(r)].size()) != cols) {
      throw ConfigError("matrix rows have inconsistent lengths");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = complex_from_json(j[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
    }
  }
  return m;
}

json state_to_json(const StateVector& s) {
  json amps = json::array();
  for (const Complex& a : s.amplitudes()) {
    amps.push_back(complex_to_json(a));
  }
  return amps;
}

StateVector state_from_json(int num_qubits, const json& j) {
  std::vector<Complex> amps;
  amps.reserve(j.size());
  for (const auto& a : j) {
    amps.push_back(complex_from_json(a));
  }
  return StateVector(num_qubits, std::move(amps));
}

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& what) {
  for (const auto& [key, value] : j.items()) {
    if (allowed.count(key) == 0) {
      throw ConfigError("unknown key '" + key + "' in " + what);
    }
  }
}

std::vector<QubitId> targets_from_json(const json& j) {
  std::vector<QubitId> out;
  for (const auto& t : j) {
    out.push_back(t.get<QubitId>());
  }
  return out;
}

}  // namespace

std::string scenario_to_json(const Scenario& scenario) {
  json j;
  j["num_qubits"] = scenario.num_qubits;
  j["preselection"] = state_to_json(scenario.preselection);
  json timeline = json::array();
  for (const Step& step : scenario.timeline) {
    json s;
    s["id"] = step.id;
    s["site"] = step.site;
    s["time"] = step.time;
    if (const auto* u = std::get_if<UnitaryStep>(&step.op)) {
      s["kind"] = "unitary";
      s["targets"] = u->targets;
      s["matrix"] = matrix_to_json(u->matrix);
    } else if (const auto* m = std::get_if<MeasureStep>(&step.op)) {
      s["kind"] = "measure";
      s["targets"] = m->targets;
      json ps = json::array();
      for (const auto& p : m->projectors) {
        ps.push_back(matrix_to_json(p));
      }
      s["projectors"] = std::move(ps);
    } else if (const auto* sz = std::get_if<SingletizeStep>(&step.op)) {
      s["kind"] = "singletize";
      s["particle"] = sz->particle;
      s["ancilla"] = sz->ancilla;
    } else if (const auto* c = std::get_if<ChannelEventStep>(&step.op)) {
      s["kind"] = "channel";
      s["channel_id"] = c->channel_id;
      s["channel_kind"] = c->kind == ChannelKind::Singlet ? "singlet" : "phiplus";
    }
    timeline.push_back(std::move(s));
  }
  j["timeline"] = std::move(timeline);
  json posts = json::array();
  for (const PostSelection& ps : scenario.postselections) {
    json p;
    p["id"] = ps.id;
    p["targets"] = ps.targets;
    p["projector"] = matrix_to_json(ps.projector);
    posts.push_back(std::move(p));
  }
  j["postselections"] = std::move(posts);
  return j.dump(2);
}

Scenario scenario_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario JSON parse error: ") + e.what());
  }
  check_keys(j, {"num_qubits", "preselection", "timeline", "postselections"}, "scenario");
  Scenario s;
  s.num_qubits = j.at("num_qubits").get<int>();
  s.preselection = state_from_json(s.num_qubits, j.at("preselection"));
  for (const auto& sj : j.value("timeline", json::array())) {
    check_keys(sj,
               {"id", "site", "time", "kind", "targets", "matrix", "projectors", "particle",
                "ancilla", "channel_id", "channel_kind"},
               "timeline step");
    Step step;
    step.id = sj.value("id", "");
    step.site = sj.value("site", 0);
    step.time = sj.value("time", 0.0);
    const std::string kind = sj.at("kind").get<std::string>();
    if (kind == "unitary") {
      step.op = UnitaryStep{matrix_from_json(sj.at("matrix")),
                            targets_from_json(sj.at("targets"))};
    } else if (kind == "measure") {
      MeasureStep m;
      m.targets = targets_from_json(sj.at("targets"));
      for (const auto& pj : sj.at("projectors")) {
        m.projectors.push_back(matrix_from_json(pj));
      }
      step.op = std::move(m);
    } else if (kind == "singletize") {
      step.op = SingletizeStep{sj.at("particle").get<QubitId>(),
                               sj.at("ancilla").get<QubitId>()};
    } else if (kind == "channel") {
      step.op = ChannelEventStep{sj.at("channel_id").get<std::string>(),
                                 sj.value("channel_kind", "singlet") == "singlet"
                                     ? ChannelKind::Singlet
                                     : ChannelKind::PhiPlus};
    } else {
      throw ConfigError("unknown step kind '" + kind + "'");
    }
    s.timeline.push_back(std::move(step));
  }
  for (const auto& pj : j.value("postselections", json::array())) {
    check_keys(pj, {"id", "targets", "projector"}, "postselection");
    PostSelection ps;
    ps.id = pj.value("id", "");
    ps.targets = targets_from_json(pj.value("targets", json::array()));
    ps.projector = matrix_from_json(pj.at("projector"));
    s.postselections.push_back(std::move(ps));
  }
  s.validate();
  return s;
}

}  // namespace tsq::tsv
