#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "dexkin/model.hpp"

namespace dexkin {

/// Raised for any rejected model document. The message starts with the
/// element path (e.g. "robot/joint[index_pip]/axis") of the offending item.
class ModelParseError : public std::runtime_error {
 public:
  ModelParseError(std::string path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Parses the URDF subset: `robot`, `link`, and `joint` (revolute|fixed) with
/// `origin`, `axis`, `limit`, `parent`, `child`. A link whose name ends in
/// "_tip" marks a chain end-effector; the chain is named by the prefix. A root
/// link named "world" with a single fixed child joint carries the palm frame.
///
/// Joint-level and graph invariants are enforced here. Hand-level checks
/// (thumb present, 16 DoF) are left to validate_model so single-finger
/// documents still load.
HandModel parse_hand_model(std::string_view document);
HandModel load_hand_model(const std::string& path);

/// Writes the model in the same subset. Numbers use 9 significant digits.
std::string serialize_hand_model(const HandModel& model);

/// 9-significant-digit decimal form used by every text output of the model.
std::string format_decimal9(double value);

}  // namespace dexkin
