#include "dynsink/instance_io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dynsink {

namespace {

std::vector<double> number_array(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) throw ValidationError(key, -1, std::string(key) + ": missing");
  const auto& arr = doc.at(key);
  if (!arr.is_array()) throw ValidationError(key, -1, std::string(key) + ": expected an array");
  std::vector<double> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) {
      throw ValidationError(key, static_cast<long>(i),
                            std::string(key) + ": expected a number at index " + std::to_string(i));
    }
    out.push_back(arr[i].get<double>());
  }
  return out;
}

double number_scalar(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) throw ValidationError(key, -1, std::string(key) + ": missing");
  if (!doc.at(key).is_number()) throw ValidationError(key, -1, std::string(key) + ": expected a number");
  return doc.at(key).get<double>();
}

}  // namespace

RawInstance raw_instance_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ValidationError("", -1, "instance must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "positions" && key != "weights" && key != "capacity" && key != "tau") {
      throw ValidationError(key, -1, "unknown key \"" + key + "\"");
    }
  }
  RawInstance raw;
  raw.positions = number_array(doc, "positions");
  raw.weights = number_array(doc, "weights");
  raw.capacity = number_scalar(doc, "capacity");
  raw.tau = number_scalar(doc, "tau");
  return raw;
}

nlohmann::json raw_instance_to_json(const RawInstance& raw) {
  return nlohmann::json{{"positions", raw.positions},
                        {"weights", raw.weights},
                        {"capacity", raw.capacity},
                        {"tau", raw.tau}};
}

nlohmann::json instance_to_json(const DynamicPathNetwork& net) { return raw_instance_to_json(net.raw()); }

DynamicPathNetwork parse_instance(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("", -1, std::string("malformed JSON: ") + e.what());
  }
  return validate_network(raw_instance_from_json(doc));
}

DynamicPathNetwork load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

std::string instance_digest(const DynamicPathNetwork& net) {
  const std::string text = instance_to_json(net).dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace dynsink
