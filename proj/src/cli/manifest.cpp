#include <openssl/evp.h>

#include <json.hpp>

#include "internal.hpp"

namespace dexkin::cli {

using nlohmann::ordered_json;

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

namespace {

ordered_json digests_json(const std::vector<FileDigest>& list, const char* key) {
  ordered_json out = ordered_json::array();
  for (const auto& d : list) out.push_back({{key, d.path}, {"sha256", d.sha256}});
  return out;
}

std::vector<FileDigest> digests_from(const ordered_json& j, const char* key) {
  std::vector<FileDigest> out;
  for (const auto& item : j) out.push_back({item.at(key).get<std::string>(), item.at("sha256").get<std::string>()});
  return out;
}

}  // namespace

std::string manifest_json(const Manifest& m) {
  ordered_json doc;
  doc["command"] = m.command;
  doc["version"] = m.version;
  doc["argv"] = m.argv;
  doc["parameters"] = ordered_json::parse(m.parameters_json);
  doc["seed"] = m.seed ? ordered_json(*m.seed) : ordered_json(nullptr);
  doc["inputs"] = digests_json(m.inputs, "path");
  doc["outputs"] = digests_json(m.outputs, "file");
  return doc.dump(2) + "\n";
}

Manifest parse_manifest(std::string_view text) {
  try {
    const auto doc = ordered_json::parse(text);
    Manifest m;
    m.command = doc.at("command").get<std::string>();
    m.version = doc.at("version").get<std::string>();
    m.argv = doc.at("argv").get<std::vector<std::string>>();
    m.parameters_json = doc.at("parameters").dump();
    if (!doc.at("seed").is_null()) m.seed = doc.at("seed").get<std::uint64_t>();
    m.inputs = digests_from(doc.at("inputs"), "path");
    m.outputs = digests_from(doc.at("outputs"), "file");
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad manifest: ") + e.what());
  }
}

}  // namespace dexkin::cli
