#include "dexkin/urdf.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

namespace dexkin {

namespace pt = boost::property_tree;

namespace {

constexpr double kUnitTolerance = 1e-9;
constexpr std::string_view kTipSuffix = "_tip";
constexpr const char* kAttr = "<xmlattr>";
constexpr const char* kComment = "<xmlcomment>";

bool is_blank(const std::string& s) {
  return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

double parse_number(std::string_view token, const std::string& path) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ModelParseError(path, "malformed number \"" + std::string(token) + "\"");
  }
  return value;
}

Eigen::Vector3d parse_triplet(const std::string& text, const std::string& path) {
  std::vector<std::string_view> tokens;
  std::string_view sv(text);
  std::size_t i = 0;
  while (i < sv.size()) {
    while (i < sv.size() && std::isspace(static_cast<unsigned char>(sv[i]))) ++i;
    std::size_t j = i;
    while (j < sv.size() && !std::isspace(static_cast<unsigned char>(sv[j]))) ++j;
    if (j > i) tokens.push_back(sv.substr(i, j - i));
    i = j;
  }
  if (tokens.size() != 3) throw ModelParseError(path, "expected 3 numbers, got \"" + text + "\"");
  return {parse_number(tokens[0], path), parse_number(tokens[1], path), parse_number(tokens[2], path)};
}

// Attribute map of an element, rejecting anything not in `allowed`.
std::map<std::string, std::string> attributes(const pt::ptree& node, const std::string& path,
                                              std::initializer_list<std::string_view> allowed) {
  std::map<std::string, std::string> out;
  if (auto attrs = node.get_child_optional(kAttr)) {
    for (const auto& [key, value] : *attrs) {
      bool ok = false;
      for (auto a : allowed) ok = ok || a == key;
      if (!ok) throw ModelParseError(path, "unknown attribute \"" + key + "\"");
      out[key] = value.data();
    }
  }
  return out;
}

std::string required(const std::map<std::string, std::string>& attrs, const std::string& key,
                     const std::string& path) {
  auto it = attrs.find(key);
  if (it == attrs.end()) throw ModelParseError(path, "missing attribute \"" + key + "\"");
  return it->second;
}

void reject_children(const pt::ptree& node, const std::string& path) {
  for (const auto& [key, child] : node) {
    if (key == kAttr || key == kComment) continue;
    throw ModelParseError(path + "/" + key, "unknown element");
  }
  if (!is_blank(node.data())) throw ModelParseError(path, "unexpected text content");
}

struct RawJoint {
  Joint joint;
  std::string parent;
  std::string child;
  std::string path;
};

RawJoint parse_joint(const pt::ptree& node, const std::string& robot_path) {
  const auto attrs = attributes(node, robot_path + "/joint", {"name", "type"});
  RawJoint raw;
  raw.joint.name = required(attrs, "name", robot_path + "/joint");
  raw.path = robot_path + "/joint[" + raw.joint.name + "]";
  const std::string type = required(attrs, "type", raw.path);
  if (type == "revolute") {
    raw.joint.kind = JointKind::kRevolute;
  } else if (type == "fixed") {
    raw.joint.kind = JointKind::kFixed;
  } else {
    throw ModelParseError(raw.path, "unsupported joint type \"" + type + "\"");
  }
  if (!is_blank(node.data())) throw ModelParseError(raw.path, "unexpected text content");

  bool has_axis = false;
  bool has_limit = false;
  std::set<std::string> seen;
  for (const auto& [key, child] : node) {
    if (key == kAttr || key == kComment) continue;
    const std::string cpath = raw.path + "/" + key;
    if (!seen.insert(key).second) throw ModelParseError(cpath, "duplicate element");
    if (key == "origin") {
      const auto a = attributes(child, cpath, {"xyz", "rpy"});
      reject_children(child, cpath);
      if (auto it = a.find("xyz"); it != a.end()) raw.joint.origin.xyz = parse_triplet(it->second, cpath);
      if (auto it = a.find("rpy"); it != a.end()) raw.joint.origin.rpy = parse_triplet(it->second, cpath);
    } else if (key == "axis") {
      const auto a = attributes(child, cpath, {"xyz"});
      reject_children(child, cpath);
      raw.joint.axis = parse_triplet(required(a, "xyz", cpath), cpath);
      has_axis = true;
    } else if (key == "limit") {
      const auto a = attributes(child, cpath, {"lower", "upper", "effort", "velocity"});
      reject_children(child, cpath);
      raw.joint.limits.lower = parse_number(required(a, "lower", cpath), cpath);
      raw.joint.limits.upper = parse_number(required(a, "upper", cpath), cpath);
      has_limit = true;
    } else if (key == "parent") {
      const auto a = attributes(child, cpath, {"link"});
      reject_children(child, cpath);
      raw.parent = required(a, "link", cpath);
    } else if (key == "child") {
      const auto a = attributes(child, cpath, {"link"});
      reject_children(child, cpath);
      raw.child = required(a, "link", cpath);
    } else {
      throw ModelParseError(cpath, "unknown element");
    }
  }
  if (raw.parent.empty()) throw ModelParseError(raw.path, "missing parent");
  if (raw.child.empty()) throw ModelParseError(raw.path, "missing child");

  if (raw.joint.is_revolute()) {
    if (!has_axis) throw ModelParseError(raw.path + "/axis", "missing axis on revolute joint");
    if (std::abs(raw.joint.axis.norm() - 1.0) > kUnitTolerance) {
      throw ModelParseError(raw.path + "/axis", "non-unit axis");
    }
    if (!has_limit) throw ModelParseError(raw.path + "/limit", "missing limit on revolute joint");
    if (raw.joint.limits.lower > raw.joint.limits.upper) {
      throw ModelParseError(raw.path + "/limit", "lower limit exceeds upper limit");
    }
  } else if (has_axis || has_limit) {
    throw ModelParseError(raw.path, "fixed joint must not carry axis or limit");
  }
  return raw;
}

}  // namespace

std::string format_decimal9(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

HandModel parse_hand_model(std::string_view document) {
  pt::ptree tree;
  {
    std::istringstream in{std::string(document)};
    try {
      pt::read_xml(in, tree);
    } catch (const pt::xml_parser_error& e) {
      throw ModelParseError("line " + std::to_string(e.line()), "malformed markup: " + e.message());
    }
  }

  const pt::ptree* robot = nullptr;
  for (const auto& [key, child] : tree) {
    if (key == kComment) continue;
    if (key != "robot" || robot != nullptr) throw ModelParseError(key, "expected a single root element <robot>");
    robot = &child;
  }
  if (robot == nullptr) throw ModelParseError("/", "missing <robot> element");

  HandModel model;
  {
    const auto attrs = attributes(*robot, "robot", {"name"});
    model.name = required(attrs, "name", "robot");
  }
  const std::string rpath = "robot";
  if (!is_blank(robot->data())) throw ModelParseError(rpath, "unexpected text content");

  std::set<std::string> links;
  std::vector<RawJoint> joints;
  std::set<std::string> joint_names;
  for (const auto& [key, child] : *robot) {
    if (key == kAttr || key == kComment) continue;
    if (key == "link") {
      const auto attrs = attributes(child, rpath + "/link", {"name"});
      const std::string name = required(attrs, "name", rpath + "/link");
      const std::string lpath = rpath + "/link[" + name + "]";
      reject_children(child, lpath);
      if (!links.insert(name).second) throw ModelParseError(lpath, "duplicate link name");
    } else if (key == "joint") {
      joints.push_back(parse_joint(child, rpath));
      if (!joint_names.insert(joints.back().joint.name).second) {
        throw ModelParseError(joints.back().path, "duplicate joint name");
      }
    } else {
      throw ModelParseError(rpath + "/" + key, "unknown element");
    }
  }

  // Tree structure: each link has at most one parent joint and every joint is
  // reachable from the single root.
  std::map<std::string, std::size_t> parent_joint_of;
  std::map<std::string, std::vector<std::size_t>> children_of;
  for (std::size_t i = 0; i < joints.size(); ++i) {
    const auto& rj = joints[i];
    if (!links.contains(rj.parent)) throw ModelParseError(rj.path + "/parent", "undeclared link " + rj.parent);
    if (!links.contains(rj.child)) throw ModelParseError(rj.path + "/child", "undeclared link " + rj.child);
    if (parent_joint_of.contains(rj.child)) {
      throw ModelParseError(rj.path, "cycle in joint graph: link " + rj.child + " has two parent joints");
    }
    parent_joint_of[rj.child] = i;
    children_of[rj.parent].push_back(i);
  }
  std::vector<std::string> roots;
  for (const auto& l : links) {
    if (!parent_joint_of.contains(l)) roots.push_back(l);
  }
  if (roots.empty()) throw ModelParseError(rpath, "cycle in joint graph: no root link");
  if (roots.size() > 1) {
    throw ModelParseError(rpath + "/link[" + roots[1] + "]", "multiple root links (" + roots[0] + ", " + roots[1] + ")");
  }
  {
    std::set<std::string> reached{roots[0]};
    std::vector<std::string> stack{roots[0]};
    while (!stack.empty()) {
      const auto l = stack.back();
      stack.pop_back();
      for (auto ji : children_of[l]) {
        if (reached.insert(joints[ji].child).second) stack.push_back(joints[ji].child);
      }
    }
    for (const auto& rj : joints) {
      if (!reached.contains(rj.child)) throw ModelParseError(rj.path, "cycle in joint graph");
    }
  }

  std::string palm = roots[0];
  std::size_t palm_mount = joints.size();
  if (palm == "world") {
    const auto& kids = children_of[palm];
    if (kids.size() != 1 || joints[kids[0]].joint.is_revolute()) {
      throw ModelParseError(rpath + "/link[world]", "world link must have exactly one fixed child joint");
    }
    palm_mount = kids[0];
    model.palm_frame = joints[palm_mount].joint.origin;
    palm = joints[palm_mount].child;
  }

  for (const auto& l : links) {
    if (l.size() <= kTipSuffix.size() || !l.ends_with(kTipSuffix)) continue;
    NamedChain nc;
    nc.name = l.substr(0, l.size() - kTipSuffix.size());
    const std::string cpath = rpath + "/link[" + l + "]";
    std::vector<std::size_t> path;
    std::string cursor = l;
    while (cursor != palm) {
      auto it = parent_joint_of.find(cursor);
      if (it == parent_joint_of.end() || it->second == palm_mount) {
        throw ModelParseError(cpath, "end-effector is not below the palm link " + palm);
      }
      path.push_back(it->second);
      cursor = joints[it->second].parent;
    }
    for (auto it = path.rbegin(); it != path.rend(); ++it) nc.chain.joints.push_back(joints[*it].joint);
    if (!nc.chain.joints.empty() && !nc.chain.joints.back().is_revolute()) {
      nc.chain.tip_offset = nc.chain.joints.back().origin;
      nc.chain.joints.pop_back();
    }
    if (nc.chain.dof() == 0) throw ModelParseError(cpath, "chain " + nc.name + " has no revolute joint");
    model.chains.push_back(std::move(nc));
  }
  if (model.chains.empty()) throw ModelParseError(rpath, "no end-effector link (name ending in \"_tip\")");
  sort_chains_canonically(model.chains);
  return model;
}

HandModel load_hand_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelParseError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_hand_model(ss.str());
}

namespace {

std::string triplet(const Eigen::Vector3d& v) {
  return format_decimal9(v.x()) + " " + format_decimal9(v.y()) + " " + format_decimal9(v.z());
}

void write_joint(std::ostringstream& out, const Joint& j, const Pose& origin, const std::string& parent,
                 const std::string& child) {
  out << "  <joint name=\"" << j.name << "\" type=\"" << (j.is_revolute() ? "revolute" : "fixed") << "\">\n";
  out << "    <origin xyz=\"" << triplet(origin.xyz) << "\" rpy=\"" << triplet(origin.rpy) << "\"/>\n";
  if (j.is_revolute()) {
    out << "    <axis xyz=\"" << triplet(j.axis) << "\"/>\n";
    out << "    <limit lower=\"" << format_decimal9(j.limits.lower) << "\" upper=\""
        << format_decimal9(j.limits.upper) << "\"/>\n";
  }
  out << "    <parent link=\"" << parent << "\"/>\n";
  out << "    <child link=\"" << child << "\"/>\n";
  out << "  </joint>\n";
}

}  // namespace

std::string serialize_hand_model(const HandModel& model) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\"?>\n";
  out << "<robot name=\"" << model.name << "\">\n";
  const std::string palm = "palm";
  if (!model.palm_frame.is_identity()) {
    out << "  <link name=\"world\"/>\n";
    out << "  <link name=\"" << palm << "\"/>\n";
    Joint mount{.name = "palm_mount", .kind = JointKind::kFixed, .origin = model.palm_frame, .axis = {}, .limits = {}};
    write_joint(out, mount, model.palm_frame, "world", palm);
  } else {
    out << "  <link name=\"" << palm << "\"/>\n";
  }

  // Joints shared by several chains (common prefixes) are written once.
  std::map<std::string, std::pair<Joint, std::string>> emitted;  // name -> (joint, parent link)
  for (const auto& nc : model.chains) {
    std::string parent = palm;
    for (const auto& j : nc.chain.joints) {
      const std::string child = j.name + "_link";
      if (auto it = emitted.find(j.name); it != emitted.end()) {
        if (!(it->second.first == j) || it->second.second != parent) {
          throw std::invalid_argument("joint name " + j.name + " is used by two different joints");
        }
      } else {
        out << "  <link name=\"" << child << "\"/>\n";
        write_joint(out, j, j.origin, parent, child);
        emitted.emplace(j.name, std::make_pair(j, parent));
      }
      parent = child;
    }
    const std::string tip = nc.name + std::string(kTipSuffix);
    Joint tip_joint{.name = nc.name + "_tip_joint", .kind = JointKind::kFixed, .origin = nc.chain.tip_offset,
                    .axis = {}, .limits = {}};
    out << "  <link name=\"" << tip << "\"/>\n";
    write_joint(out, tip_joint, nc.chain.tip_offset, parent, tip);
  }
  out << "</robot>\n";
  return out.str();
}

}  // namespace dexkin
