#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <ostream>

#include <CLI11.hpp>
#include <Eigen/Geometry>
#include <json.hpp>

#include "dexkin/archetype.hpp"
#include "dexkin/cli.hpp"
#include "dexkin/kinematics.hpp"
#include "dexkin/manipulability.hpp"
#include "dexkin/retarget.hpp"
#include "dexkin/reward.hpp"
#include "dexkin/urdf.hpp"
#include "dexkin/workspace.hpp"
#include "internal.hpp"

namespace dexkin::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

struct Run {
  std::string command;
  bool to_dir = false;
  ordered_json params = ordered_json::object();
  std::optional<std::uint64_t> seed;
  std::vector<FileDigest> inputs;
  std::vector<std::pair<std::string, std::string>> files;  // first entry is the primary output
  std::vector<std::string> messages;                        // for stderr
  int exit_code = kExitOk;
};

std::string read_input(Run& run, const std::string& path) {
  std::string text = read_text_file(path);
  run.inputs.push_back({path, sha256_hex(text)});
  return text;
}

struct ModelFlags {
  std::vector<std::string> paths;
  std::vector<std::string> archetypes;
};

void add_model_flags(CLI::App* cmd, ModelFlags& f, bool many) {
  const std::string suffix = many ? " (repeatable)" : "";
  cmd->add_option("--model", f.paths, "URDF hand model" + suffix);
  cmd->add_option("--archetype", f.archetypes, "Built-in archetype" + suffix)
      ->check(CLI::IsMember({"leap", "leap-c", "allegro"}));
}

// File models first, then archetypes, each in flag order.
std::vector<HandModel> load_models(Run& run, const ModelFlags& f, bool many, bool default_all, bool validate) {
  std::vector<HandModel> models;
  ordered_json sources = ordered_json::array();
  for (const auto& path : f.paths) {
    const std::string text = read_input(run, path);
    try {
      models.push_back(parse_hand_model(text));
    } catch (const ModelParseError& e) {
      throw InputError(path + ": " + e.what());
    }
    sources.push_back({{"model", path}});
  }
  for (const auto& name : f.archetypes) {
    models.push_back(build_archetype(parse_archetype_kind(name)));
    sources.push_back({{"archetype", name}});
  }
  if (models.empty()) {
    if (!default_all) throw InputError("one of --model or --archetype is required");
    for (auto k : {ArchetypeKind::kLeap, ArchetypeKind::kLeapC, ArchetypeKind::kAllegro}) {
      models.push_back(build_archetype(k));
      sources.push_back({{"archetype", archetype_name(k)}});
    }
  }
  if (!many && models.size() > 1) throw InputError("exactly one of --model or --archetype is allowed");
  if (validate) {
    for (const auto& m : models) {
      const auto diags = validate_model(m);
      if (!diags.empty()) {
        throw InputError("model " + m.name + ": " + diags.front().location + ": " + diags.front().message);
      }
    }
  }
  run.params["models"] = sources;
  return models;
}

std::string clean9(double v) { return format_decimal9(v == 0.0 ? 0.0 : v); }

// ---------------------------------------------------------------- fk

struct FkFlags {
  ModelFlags model;
  std::string q;
  std::string q_file;
};

void cmd_fk(Run& run, const FkFlags& f) {
  const HandModel model = std::move(load_models(run, f.model, false, false, false).front());
  if (!f.q.empty() && !f.q_file.empty()) throw InputError("give --q or --q-file, not both");
  JointConfig q = model.zero_config();
  if (!f.q.empty() || !f.q_file.empty()) {
    const auto values =
        f.q.empty() ? parse_number_list(read_input(run, f.q_file), f.q_file) : parse_number_list(f.q, "--q");
    if (values.size() != model.dof()) {
      throw InputError("expected " + std::to_string(model.dof()) + " values, got " + std::to_string(values.size()));
    }
    q = Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
  }
  std::vector<double> qv(q.data(), q.data() + q.size());
  run.params["q"] = qv;

  std::string csv = "chain,x,y,z,qw,qx,qy,qz\n";
  for (const auto& nc : model.chains) {
    const Transform t = forward_kinematics(nc.chain, model.chain_config(q, nc.name));
    Eigen::Quaterniond rot(t.rotation);
    rot.normalize();
    if (rot.w() < 0.0) rot.coeffs() *= -1.0;
    csv += nc.name;
    for (double v : {t.translation.x(), t.translation.y(), t.translation.z(), rot.w(), rot.x(), rot.y(), rot.z()}) {
      csv += "," + clean9(v);
    }
    csv += "\n";
  }
  run.files.emplace_back("fk.csv", std::move(csv));
}

// ---------------------------------------------------------------- manip

struct ManipFlags {
  ModelFlags model;
  std::string chain = "index";
  std::string preset_file;
  double abduction = kPresetAbduction;
};

std::vector<PosePreset> parse_preset_file(const std::string& text, const std::string& path) {
  try {
    const auto doc = ordered_json::parse(text);
    std::vector<PosePreset> out;
    for (const auto& p : doc.at("presets")) {
      const auto q = p.at("q").get<std::vector<double>>();
      out.push_back({p.at("name").get<std::string>(),
                     Eigen::Map<const Eigen::VectorXd>(q.data(), static_cast<Eigen::Index>(q.size()))});
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

void cmd_manip(Run& run, const ManipFlags& f) {
  const auto models = load_models(run, f.model, true, true, false);
  run.params["chain"] = f.chain;
  std::optional<std::vector<PosePreset>> custom;
  if (!f.preset_file.empty()) {
    custom = parse_preset_file(read_input(run, f.preset_file), f.preset_file);
    run.params["preset_file"] = f.preset_file;
  } else {
    run.params["abduction"] = f.abduction;
  }
  std::vector<ModelPresets> inputs;
  for (const auto& m : models) {
    if (!m.has_chain(f.chain)) throw InputError("model " + m.name + " has no chain " + f.chain);
    ModelPresets mp{&m, custom ? *custom : default_presets(m, f.chain, f.abduction)};
    for (const auto& p : mp.presets) check_preset(m, f.chain, p);
    inputs.push_back(std::move(mp));
  }
  run.files.emplace_back("manip.csv", manip_report_csv(manipulability_report(inputs, f.chain)));
}

// ---------------------------------------------------------------- oppose

struct OpposeFlags {
  ModelFlags model;
  std::vector<std::string> fingers;
  std::int64_t n = static_cast<std::int64_t>(kDefaultSamples);
  std::uint64_t seed = 0;
  double threshold = kDefaultContactThreshold;
  double voxel = kDefaultVoxel;
};

void check_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw InputError(std::string(name) + " must be > 0");
}

void cmd_oppose(Run& run, const OpposeFlags& f) {
  if (f.n < 1) throw InputError("n must be ≥ 1");
  check_positive(f.threshold, "threshold");
  check_positive(f.voxel, "voxel");
  const auto models = load_models(run, f.model, true, true, true);
  const std::vector<std::string> fingers =
      f.fingers.empty() ? std::vector<std::string>{"index", "middle", "ring"} : f.fingers;
  for (const auto& m : models) {
    for (const auto& finger : fingers) {
      if (finger == "thumb" || !m.has_chain(finger)) throw InputError("unknown finger: " + finger);
    }
  }
  run.params["fingers"] = fingers;
  run.params["n"] = f.n;
  run.params["threshold"] = f.threshold;
  run.params["voxel"] = f.voxel;
  run.seed = f.seed;

  std::vector<OpposabilityResult> results;
  std::vector<std::pair<std::string, std::string>> extra;
  const auto keep = run.to_dir ? ContactKeep::kPerVoxel : ContactKeep::kNone;
  for (const auto& m : models) {
    for (const auto& finger : fingers) {
      const auto r = opposability_volume(m, finger, static_cast<std::size_t>(f.n), f.seed, f.threshold, f.voxel, keep);
      results.push_back(r.result);
      run.messages.push_back(m.name + " " + finger + ": volume " + clean9(r.result.volume_mm3) + " mm^3, " +
                             std::to_string(r.result.contacts) + " contacts, seed " + std::to_string(f.seed));
      if (run.to_dir) {
        std::vector<Eigen::Vector3d> points;
        points.reserve(r.contacts.size());
        for (const auto& c : r.contacts) points.push_back(c.point);
        const std::string stem = "contacts_" + m.name + "_" + finger;
        extra.emplace_back(stem + ".csv", point_cloud_csv(points));
        extra.emplace_back(stem + ".svg", scatter_svg(points, m.name + " " + finger + "-thumb contacts"));
      }
    }
  }
  run.files.emplace_back("oppose.json", opposability_json(results));
  for (auto& e : extra) run.files.push_back(std::move(e));
}

// ---------------------------------------------------------------- workspace

struct WorkspaceFlags {
  ModelFlags model;
  std::string chain = "index";
  std::int64_t n = 5000;
  std::uint64_t seed = 0;
};

void cmd_workspace(Run& run, const WorkspaceFlags& f) {
  if (f.n < 1) throw InputError("n must be ≥ 1");
  const HandModel model = std::move(load_models(run, f.model, false, false, false).front());
  if (!model.has_chain(f.chain)) throw InputError("unknown chain: " + f.chain);
  run.params["chain"] = f.chain;
  run.params["n"] = f.n;
  run.seed = f.seed;
  const std::uint32_t stream = f.chain == "thumb" ? kThumbStream : kFingerStream;
  const auto samples = sample_workspace(model.chain(f.chain), f.chain, static_cast<std::size_t>(f.n), f.seed, stream);
  std::vector<Eigen::Vector3d> points;
  points.reserve(samples.size());
  for (const auto& s : samples) points.push_back(s.tip);
  const std::string stem = "workspace_" + model.name + "_" + f.chain;
  run.files.emplace_back(stem + ".csv", point_cloud_csv(points));
  run.files.emplace_back(stem + ".svg", scatter_svg(points, model.name + " " + f.chain + " workspace"));
  run.messages.push_back("seed " + std::to_string(f.seed));
}

// ---------------------------------------------------------------- retarget

struct RetargetFlags {
  ModelFlags model;
  std::string frames;
  std::string mode = "energy";
  std::string spec;
  std::string mapping;
  RetargetOptions opts;
  bool no_clamp = false;
  bool single_start = false;
};

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") != std::string_view::npos) out.push_back(line);
    start = end + 1;
  }
  return out;
}

void cmd_retarget(Run& run, RetargetFlags f) {
  const HandModel model = std::move(load_models(run, f.model, false, false, true).front());
  if (f.mode != "energy" && f.mode != "direct") throw InputError("--mode must be energy or direct");
  if (f.mode == "direct" && f.mapping.empty()) throw InputError("--mode direct requires --mapping");
  f.opts.clamp_to_limits = !f.no_clamp;
  f.opts.multi_start = !f.single_start;
  try {
    check_options(f.opts);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  run.params["mode"] = f.mode;
  run.params["frames"] = f.frames;

  const std::string frames_text = read_input(run, f.frames);
  std::string csv = joint_csv_header(model.dof());
  std::vector<StreamWarning> warnings;
  std::size_t count = 0;

  if (f.mode == "energy") {
    KeyVectorSpec spec = default_key_vector_spec(model);
    if (!f.spec.empty()) {
      spec = parse_key_vector_spec(read_input(run, f.spec));
      run.params["spec"] = f.spec;
    }
    check_key_vector_spec(spec, model);
    run.params["max_iterations"] = f.opts.max_iterations;
    run.params["tolerance"] = f.opts.tolerance;
    run.params["lambda"] = f.opts.smoothing;
    run.params["clamp"] = f.opts.clamp_to_limits;
    run.params["multi_start"] = f.opts.multi_start;
    RetargetStream stream(model, spec, f.opts);
    double last_t = 0.0;
    for (const auto line : lines_of(frames_text)) {
      try {
        const HumanHandFrame frame = parse_frame_record(line);
        last_t = frame.timestamp;
        csv += joint_csv_row(frame.timestamp, stream.push(frame));
      } catch (const std::invalid_argument& e) {
        csv += joint_csv_row(last_t, stream.hold(last_t, std::string("unparseable frame: ") + e.what()));
      }
    }
    warnings = stream.warnings();
    count = stream.frames();
  } else {
    const JointMapping mapping = parse_joint_mapping(read_input(run, f.mapping));
    check_joint_mapping(mapping, model);
    run.params["mapping"] = f.mapping;
    JointConfig q = model.clamp(model.zero_config());
    double last_t = 0.0;
    for (const auto line : lines_of(frames_text)) {
      try {
        const HumanHandFrame frame = parse_frame_record(line);
        last_t = frame.timestamp;
        q = direct_joint_map(frame, mapping, model);
      } catch (const std::exception& e) {
        warnings.push_back({count, last_t, e.what()});
      }
      csv += joint_csv_row(last_t, q);
      ++count;
    }
  }

  std::string log;
  for (const auto& w : warnings) {
    log += "frame " + std::to_string(w.frame) + " t=" + clean9(w.timestamp) + ": " + w.message + "\n";
  }
  run.files.emplace_back("retarget.csv", std::move(csv));
  if (run.to_dir) {
    run.files.emplace_back("retarget.log", log);
  } else if (!log.empty()) {
    run.messages.push_back(log.substr(0, log.size() - 1));
  }
  run.messages.push_back(std::to_string(count) + " frames, " + std::to_string(warnings.size()) + " warnings");
}

// ---------------------------------------------------------------- reward

struct RewardFlags {
  std::string trajectory;
  std::string scales;
  double tick_rate = kDefaultTickRate;
};

void cmd_reward(Run& run, const RewardFlags& f) {
  check_positive(f.tick_rate, "tick rate");
  RewardScales scales;
  PenaltyForms forms;
  if (!f.scales.empty()) parse_reward_config(read_input(run, f.scales), scales, forms);
  const auto steps = parse_trajectory_csv(read_input(run, f.trajectory));
  if (steps.empty()) throw InputError(f.trajectory + ": trajectory has no steps");
  std::vector<RewardBreakdown> rows;
  rows.reserve(steps.size());
  for (const auto& s : steps) rows.push_back(step_reward(s, scales, forms));
  const EpisodeSummary summary = episode_return(steps, scales, forms, f.tick_rate);
  run.params["trajectory"] = f.trajectory;
  if (!f.scales.empty()) run.params["scales"] = f.scales;
  run.params["tick_rate"] = f.tick_rate;
  run.files.emplace_back("reward.json", reward_report_json(steps, rows, summary, scales, forms));
}

// ---------------------------------------------------------------- model

void cmd_model_export(Run& run, const ModelFlags& f) {
  const HandModel model = std::move(load_models(run, f, false, false, false).front());
  run.files.emplace_back(model.name + ".urdf", serialize_hand_model(model));
}

void cmd_model_validate(Run& run, const ModelFlags& f) {
  const HandModel model = std::move(load_models(run, f, false, false, false).front());
  std::string report;
  for (const auto& d : validate_model(model)) report += d.invariant + "\t" + d.location + "\t" + d.message + "\n";
  if (report.empty()) {
    report = "ok\n";
  } else {
    run.exit_code = kExitUsage;
  }
  run.files.emplace_back("validate.txt", std::move(report));
}

// ---------------------------------------------------------------- driver

std::vector<std::string> without_out(const std::vector<std::string>& args) {
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--out") {
      ++i;
      continue;
    }
    if (args[i].rfind("--out=", 0) == 0) continue;
    kept.push_back(args[i]);
  }
  return kept;
}

int emit(const Run& run, const std::vector<std::string>& args, const std::string& out_dir, std::ostream& out,
         std::ostream& err) {
  for (const auto& m : run.messages) err << m << "\n";
  if (!run.to_dir) {
    if (!run.files.empty()) out << run.files.front().second;
    return run.exit_code;
  }
  fs::create_directories(out_dir);
  Manifest manifest;
  manifest.command = run.command;
  manifest.version = DEXKIN_VERSION;
  manifest.argv = without_out(args);
  manifest.parameters_json = run.params.dump();
  manifest.seed = run.seed;
  manifest.inputs = run.inputs;
  for (const auto& [name, content] : run.files) {
    write_text_file((fs::path(out_dir) / name).string(), content);
    manifest.outputs.push_back({name, sha256_hex(content)});
  }
  write_text_file((fs::path(out_dir) / "manifest.json").string(), manifest_json(manifest));
  err << "wrote " << run.files.size() << " file(s) and manifest.json to " << out_dir << "\n";
  return run.exit_code;
}

int replay(const std::string& manifest_path, const std::string& out_dir, std::ostream& out, std::ostream& err) {
  const std::string original_text = read_text_file(manifest_path);
  const Manifest m = parse_manifest(original_text);
  for (const auto& in : m.inputs) {
    if (sha256_hex(read_text_file(in.path)) != in.sha256) throw InputError("input changed since the run: " + in.path);
  }
  std::vector<std::string> args = m.argv;
  args.push_back("--out");
  args.push_back(out_dir);
  std::ostringstream sink;
  const int code = run(args, sink, err);
  if (code != kExitOk) return code;

  bool same = true;
  for (const auto& o : m.outputs) {
    const fs::path p = fs::path(out_dir) / o.path;
    const bool ok = fs::exists(p) && sha256_hex(read_text_file(p.string())) == o.sha256;
    out << (ok ? "identical " : "differs   ") << o.path << "\n";
    same = same && ok;
  }
  const bool manifest_same = read_text_file((fs::path(out_dir) / "manifest.json").string()) == original_text;
  out << (manifest_same ? "identical " : "differs   ") << "manifest.json\n";
  return same && manifest_same ? kExitOk : kExitInternal;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kinematic analysis and retargeting toolkit for dexterous robot hands", "dexkin"};
  app.set_version_flag("--version", DEXKIN_VERSION);
  app.require_subcommand(1);

  std::string out_dir;
  std::function<void(Run&)> action;
  const auto add_out = [&](CLI::App* cmd) { cmd->add_option("--out", out_dir, "Write files and manifest.json here"); };

  FkFlags fk;
  auto* c_fk = app.add_subcommand("fk", "Fingertip poses (palm frame) for one configuration");
  add_model_flags(c_fk, fk.model, false);
  c_fk->add_option("--q", fk.q, "Joint values, comma separated, hand order");
  c_fk->add_option("--q-file", fk.q_file, "File with joint values");
  add_out(c_fk);
  c_fk->callback([&] { action = [&](Run& r) { cmd_fk(r, fk); }; });

  ManipFlags manip;
  auto* c_manip = app.add_subcommand("manip", "Yoshikawa measures at pose presets");
  add_model_flags(c_manip, manip.model, true);
  c_manip->add_option("--chain", manip.chain, "Finger to evaluate")->capture_default_str();
  c_manip->add_option("--preset-file", manip.preset_file, "JSON {\"presets\": [{\"name\", \"q\"}]}");
  c_manip->add_option("--abduction", manip.abduction, "Abduction used by the default presets")->capture_default_str();
  add_out(c_manip);
  c_manip->callback([&] { action = [&](Run& r) { cmd_manip(r, manip); }; });

  OpposeFlags oppose;
  auto* c_oppose = app.add_subcommand("oppose", "Thumb-finger opposability volumes");
  add_model_flags(c_oppose, oppose.model, true);
  c_oppose->add_option("--finger", oppose.fingers, "Finger(s) to pair with the thumb (default index middle ring)");
  c_oppose->add_option("--n", oppose.n, "Configurations sampled per chain")->capture_default_str();
  c_oppose->add_option("--seed", oppose.seed, "Sampling seed")->capture_default_str();
  c_oppose->add_option("--threshold", oppose.threshold, "Contact distance, meters")->capture_default_str();
  c_oppose->add_option("--voxel", oppose.voxel, "Voxel edge, meters")->capture_default_str();
  add_out(c_oppose);
  c_oppose->callback([&] { action = [&](Run& r) { cmd_oppose(r, oppose); }; });

  WorkspaceFlags ws;
  auto* c_ws = app.add_subcommand("workspace", "Sampled fingertip point cloud of one chain");
  add_model_flags(c_ws, ws.model, false);
  c_ws->add_option("--chain", ws.chain, "Chain to sample")->capture_default_str();
  c_ws->add_option("--n", ws.n, "Samples")->capture_default_str();
  c_ws->add_option("--seed", ws.seed, "Sampling seed")->capture_default_str();
  add_out(c_ws);
  c_ws->callback([&] { action = [&](Run& r) { cmd_workspace(r, ws); }; });

  RetargetFlags rt;
  auto* c_rt = app.add_subcommand("retarget", "Human keypoint frames to robot joint angles");
  add_model_flags(c_rt, rt.model, false);
  c_rt->add_option("--frames", rt.frames, "JSONL keypoint frames")->required();
  c_rt->add_option("--mode", rt.mode, "energy or direct")->capture_default_str();
  c_rt->add_option("--spec", rt.spec, "Key vector spec JSON (energy mode)");
  c_rt->add_option("--mapping", rt.mapping, "Joint mapping JSON (direct mode)");
  c_rt->add_option("--lambda", rt.opts.smoothing, "Temporal smoothing weight")->capture_default_str();
  c_rt->add_option("--max-iter", rt.opts.max_iterations, "Iterations per frame")->capture_default_str();
  c_rt->add_option("--tol", rt.opts.tolerance, "Energy-decrease tolerance, m^2")->capture_default_str();
  c_rt->add_flag("--no-clamp", rt.no_clamp, "Do not project onto joint limits");
  c_rt->add_flag("--single-start", rt.single_start, "Only start from the previous frame's solution");
  add_out(c_rt);
  c_rt->callback([&] { action = [&](Run& r) { cmd_retarget(r, rt); }; });

  RewardFlags rw;
  auto* c_rw = app.add_subcommand("reward", "Per-step and episode in-hand rotation reward");
  c_rw->add_option("--trajectory", rw.trajectory, "Trajectory CSV")->required();
  c_rw->add_option("--scales", rw.scales, "JSON {\"scales\": {...}, \"forms\": {...}}");
  c_rw->add_option("--tick-rate", rw.tick_rate, "Control rate in Hz, for per-second figures")->capture_default_str();
  add_out(c_rw);
  c_rw->callback([&] { action = [&](Run& r) { cmd_reward(r, rw); }; });

  ModelFlags mflags;
  auto* c_model = app.add_subcommand("model", "Model file utilities");
  c_model->require_subcommand(1);
  auto* c_export = c_model->add_subcommand("export", "Write a model as URDF");
  add_model_flags(c_export, mflags, false);
  add_out(c_export);
  c_export->callback([&] { action = [&](Run& r) { cmd_model_export(r, mflags); }; });
  auto* c_validate = c_model->add_subcommand("validate", "List violated model invariants");
  add_model_flags(c_validate, mflags, false);
  add_out(c_validate);
  c_validate->callback([&] { action = [&](Run& r) { cmd_model_validate(r, mflags); }; });

  std::string manifest_path;
  auto* c_replay = app.add_subcommand("replay", "Re-run a manifest and compare outputs byte for byte");
  c_replay->add_option("manifest", manifest_path, "manifest.json of an earlier run")->required();
  c_replay->add_option("--out", out_dir, "Directory for the new outputs")->required();

  std::vector<std::string> argv_store{"dexkin"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (c_replay->parsed()) return replay(manifest_path, out_dir, out, err);
    Run r;
    for (auto* sub = app.get_subcommands().front(); sub != nullptr;) {
      r.command += (r.command.empty() ? "" : " ") + sub->get_name();
      const auto children = sub->get_subcommands();
      sub = children.empty() ? nullptr : children.front();
    }
    r.to_dir = !out_dir.empty();
    action(r);
    return emit(r, args, out_dir, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ModelParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace dexkin::cli
