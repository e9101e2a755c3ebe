#pragma once
// Instance files (JSON schema v1) and a float-exact JSON emitter.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ncssa/kappa.hpp"

namespace ncssa {

using Json = nlohmann::ordered_json;

/// Malformed or inconsistent input; the message names the offending field.
struct InputError : Error {
  using Error::Error;
};

inline constexpr int kSchemaVersion = 1;

struct Instance {
  std::string preset;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, int>> dims;
  std::vector<std::pair<std::string, Algebra>> algebras;  // preferred names
  std::map<std::string, Channel> channels;
  std::map<std::string, Povm> povms;  // channels stored by their effects
  std::map<std::string, Inclusion> inclusions;
  std::map<std::string, AlgElement> states;
  std::optional<ConditionalExpectation> e_r;

  const Channel& channel(const std::string& name) const;
  const Inclusion& inclusion(const std::string& name) const;
  const AlgElement& state(const std::string& name) const;
  const Povm& povm(const std::string& name) const;
};

Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);
std::string serialize_instance(const Instance& inst);
void save_instance(const Instance& inst, const std::string& path);

/// Like Json::dump but floats always carry 17 significant digits.
std::string dump_json(const Json& j, int indent = 2);

Json matrix_to_json(const Mat& m);
Mat matrix_from_json(const Json& j, const std::string& field);

}  // namespace ncssa
