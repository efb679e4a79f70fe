#include "dexkin/reward.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace dexkin {

using nlohmann::json;
using nlohmann::ordered_json;

void check_scales(const RewardScales& s) {
  if (!(s.rotation > 0.0) || !std::isfinite(s.rotation)) throw std::invalid_argument("rotation scale must be > 0");
  for (double p : {s.pose, s.work, s.torque, s.linvel}) {
    if (!(p <= 0.0) || !std::isfinite(p)) throw std::invalid_argument("penalty scales must be <= 0");
  }
}

std::string_view penalty_form_name(PenaltyForm form) {
  switch (form) {
    case PenaltyForm::kSquaredL2:
      return "squared_l2";
    case PenaltyForm::kL2:
      return "l2";
    case PenaltyForm::kL1:
      return "l1";
  }
  return "unknown";
}

PenaltyForm parse_penalty_form(std::string_view name) {
  for (auto f : {PenaltyForm::kSquaredL2, PenaltyForm::kL2, PenaltyForm::kL1}) {
    if (penalty_form_name(f) == name) return f;
  }
  throw std::invalid_argument("unknown penalty form: " + std::string(name));
}

namespace {

double apply_form(const Eigen::Ref<const Eigen::VectorXd>& v, PenaltyForm form) {
  switch (form) {
    case PenaltyForm::kSquaredL2:
      return v.squaredNorm();
    case PenaltyForm::kL2:
      return v.norm();
    case PenaltyForm::kL1:
      return v.lpNorm<1>();
  }
  return 0.0;
}

}  // namespace

double rotation_reward(double wz) {
  if (!std::isfinite(wz)) throw std::invalid_argument("angular velocity is not finite");
  return std::clamp(wz, -0.25, 0.25);
}

RewardBreakdown step_reward(const TrajectoryStep& step, const RewardScales& scales, const PenaltyForms& forms) {
  const auto n = step.q.size();
  for (const auto* v : {&step.q_target, &step.tau, &step.dq, &step.q_grasp}) {
    if (v->size() != n) {
      throw std::invalid_argument("step vectors differ in length: " + std::to_string(v->size()) + " vs " +
                                  std::to_string(n));
    }
  }
  if (!step.q.allFinite() || !step.q_target.allFinite() || !step.tau.allFinite() || !step.dq.allFinite() ||
      !step.q_grasp.allFinite() || !step.v_obj.allFinite()) {
    throw std::invalid_argument("step contains non-finite values");
  }
  RewardBreakdown b;
  b.raw.r_rot = rotation_reward(step.wz);
  b.raw.pose = apply_form(step.q - step.q_grasp, forms.pose);
  b.raw.work = apply_form(step.tau.cwiseProduct(step.dq), forms.work);
  b.raw.torque = apply_form(step.tau, forms.torque);
  b.raw.linvel = apply_form(step.v_obj, forms.linvel);
  b.scaled.r_rot = scales.rotation * b.raw.r_rot;
  b.scaled.pose = scales.pose * b.raw.pose;
  b.scaled.work = scales.work * b.raw.work;
  b.scaled.torque = scales.torque * b.raw.torque;
  b.scaled.linvel = scales.linvel * b.raw.linvel;
  b.total = b.scaled.r_rot + b.scaled.pose + b.scaled.work + b.scaled.torque + b.scaled.linvel;
  return b;
}

namespace {

void accumulate(RewardTerms& acc, const RewardTerms& t) {
  acc.r_rot += t.r_rot;
  acc.pose += t.pose;
  acc.work += t.work;
  acc.torque += t.torque;
  acc.linvel += t.linvel;
}

}  // namespace

EpisodeSummary episode_return(const std::vector<TrajectoryStep>& steps, const RewardScales& scales,
                              const PenaltyForms& forms, double tick_rate) {
  if (steps.empty()) throw std::invalid_argument("episode has no steps");
  if (!(tick_rate > 0.0)) throw std::invalid_argument("tick rate must be > 0");
  EpisodeSummary s;
  s.steps = steps.size();
  s.tick_rate = tick_rate;
  double wz_sum = 0.0;
  for (const auto& step : steps) {
    const RewardBreakdown b = step_reward(step, scales, forms);
    accumulate(s.raw_sums, b.raw);
    accumulate(s.scaled_sums, b.scaled);
    s.total += b.total;
    wz_sum += step.wz;
  }
  s.mean_wz = wz_sum / static_cast<double>(steps.size());
  s.duration = static_cast<double>(steps.size()) / tick_rate;
  s.total_per_second = s.total / s.duration;
  return s;
}

namespace {

std::vector<std::string> trajectory_columns() {
  std::vector<std::string> cols{"t"};
  const auto block = [&](const char* prefix) {
    for (int i = 0; i < kTrajectoryJoints; ++i) cols.push_back(prefix + std::to_string(i));
  };
  block("q");
  block("qt");
  block("tau");
  block("dq");
  for (const char* c : {"wz", "vx", "vy", "vz"}) cols.emplace_back(c);
  block("qg");
  return cols;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::vector<TrajectoryStep> parse_trajectory_csv(std::string_view text) {
  std::vector<std::string_view> lines;
  for (auto l : split(text, '\n')) {
    if (!trim(l).empty()) lines.push_back(l);
  }
  if (lines.empty()) throw std::invalid_argument("trajectory: missing header");

  const auto expected = trajectory_columns();
  std::map<std::string, std::size_t, std::less<>> position;
  const auto header = split(lines[0], ',');
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string name(trim(header[i]));
    if (!position.emplace(name, i).second) throw std::invalid_argument("trajectory: duplicate column '" + name + "'");
  }
  // Missing columns are reported first: a misspelt column is usually both.
  for (const auto& c : expected) {
    if (!position.contains(c)) throw std::invalid_argument("trajectory: missing column '" + c + "'");
  }
  for (const auto& kv : position) {
    if (std::find(expected.begin(), expected.end(), kv.first) == expected.end()) {
      throw std::invalid_argument("trajectory: unexpected column '" + kv.first + "'");
    }
  }

  std::vector<TrajectoryStep> steps;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto cells = split(lines[li], ',');
    const std::string where = "trajectory line " + std::to_string(li + 1);
    if (cells.size() != header.size()) {
      throw std::invalid_argument(where + ": expected " + std::to_string(header.size()) + " values, got " +
                                  std::to_string(cells.size()));
    }
    const auto value = [&](const std::string& col) {
      const auto cell = trim(cells[position.find(col)->second]);
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
        throw std::invalid_argument(where + ": bad value in column '" + col + "'");
      }
      return v;
    };
    const auto vec = [&](const char* prefix) {
      Eigen::VectorXd v(kTrajectoryJoints);
      for (int i = 0; i < kTrajectoryJoints; ++i) v[i] = value(prefix + std::to_string(i));
      return v;
    };
    TrajectoryStep s;
    s.t = value("t");
    s.q = vec("q");
    s.q_target = vec("qt");
    s.tau = vec("tau");
    s.dq = vec("dq");
    s.wz = value("wz");
    s.v_obj = {value("vx"), value("vy"), value("vz")};
    s.q_grasp = vec("qg");
    steps.push_back(std::move(s));
  }
  return steps;
}

std::string trajectory_csv(const std::vector<TrajectoryStep>& steps) {
  std::ostringstream out;
  out.precision(17);
  const auto cols = trajectory_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << "\n";
  for (const auto& s : steps) {
    out << s.t;
    for (const auto* v : {&s.q, &s.q_target, &s.tau, &s.dq}) {
      for (Eigen::Index i = 0; i < v->size(); ++i) out << "," << (*v)[i];
    }
    out << "," << s.wz << "," << s.v_obj.x() << "," << s.v_obj.y() << "," << s.v_obj.z();
    for (Eigen::Index i = 0; i < s.q_grasp.size(); ++i) out << "," << s.q_grasp[i];
    out << "\n";
  }
  return out.str();
}

void parse_reward_config(std::string_view text, RewardScales& scales, PenaltyForms& forms) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("reward config: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("reward config must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "scales" && key != "forms") throw std::invalid_argument("reward config: unknown field '" + key + "'");
  }
  try {
    if (doc.contains("scales")) {
      const std::map<std::string, double*> slots{{"rotation", &scales.rotation}, {"pose", &scales.pose},
                                                 {"work", &scales.work},         {"torque", &scales.torque},
                                                 {"linvel", &scales.linvel}};
      for (const auto& [key, val] : doc.at("scales").items()) {
        const auto it = slots.find(key);
        if (it == slots.end()) throw std::invalid_argument("reward config: unknown scale '" + key + "'");
        *it->second = val.get<double>();
      }
    }
    if (doc.contains("forms")) {
      const std::map<std::string, PenaltyForm*> slots{
          {"pose", &forms.pose}, {"work", &forms.work}, {"torque", &forms.torque}, {"linvel", &forms.linvel}};
      for (const auto& [key, val] : doc.at("forms").items()) {
        const auto it = slots.find(key);
        if (it == slots.end()) throw std::invalid_argument("reward config: unknown form '" + key + "'");
        *it->second = parse_penalty_form(val.get<std::string>());
      }
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("reward config: ") + e.what());
  }
  check_scales(scales);
}

namespace {

ordered_json terms_json(const RewardTerms& t) {
  return {{"r_rot", t.r_rot}, {"p_pose", t.pose}, {"p_work", t.work}, {"p_torque", t.torque}, {"p_linvel", t.linvel}};
}

}  // namespace

std::string reward_report_json(const std::vector<TrajectoryStep>& steps, const std::vector<RewardBreakdown>& rows,
                               const EpisodeSummary& s, const RewardScales& scales, const PenaltyForms& forms) {
  ordered_json doc;
  doc["scales"] = {{"rotation", scales.rotation},
                   {"pose", scales.pose},
                   {"work", scales.work},
                   {"torque", scales.torque},
                   {"linvel", scales.linvel}};
  doc["forms"] = {{"pose", penalty_form_name(forms.pose)},
                  {"work", penalty_form_name(forms.work)},
                  {"torque", penalty_form_name(forms.torque)},
                  {"linvel", penalty_form_name(forms.linvel)}};
  ordered_json list = ordered_json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    list.push_back({{"t", steps.at(i).t},
                    {"terms", terms_json(rows[i].raw)},
                    {"scaled", terms_json(rows[i].scaled)},
                    {"total", rows[i].total}});
  }
  doc["steps"] = list;
  doc["episode"] = {{"steps", s.steps},
                    {"terms", terms_json(s.raw_sums)},
                    {"scaled", terms_json(s.scaled_sums)},
                    {"total", s.total},
                    {"mean_wz", s.mean_wz},
                    {"tick_rate_hz", s.tick_rate},
                    {"duration_s", s.duration},
                    {"total_per_second", s.total_per_second}};
  return doc.dump(2) + "\n";
}

}  // namespace dexkin
