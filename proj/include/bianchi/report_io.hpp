#pragma once

// Serialization: exact JSON (rationals as "num/den" strings), a floating-point
// OFF rendering of the polyhedron boundary, lift tables and run manifests.

#include "bianchi/cohomology.hpp"
#include "bianchi/swan.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <string>

namespace bianchi {

using Json = nlohmann::ordered_json;

/// Integer as a JSON integer when it fits in 64 bits, as a decimal string otherwise.
Json to_json(const Integer& z);
/// "num/den" ("num" when integral).
Json to_json(const Rational& q);
/// {"r": .., "w": ..} in the basis 1, omega.
Json to_json(const KElem& z);
Json to_json(const GroupElement& g);

Json polyhedron_json(const Polyhedron& poly, bool certificate);
Json complex_json(const GammaComplex& x);
Json report_json(const DimensionReport& report);
Json sweep_json(const SweepResult& sweep);

/// Boundary of the polyhedron as an OFF mesh, 12 significant digits.
std::string polyhedron_off(const Polyhedron& poly);

/// Lower bounds for the lift dimension keyed by (m, n). The file holds
/// {"lifts": [{"m": 2, "n": 3, "dim": 1}, ...]}.
using LiftTable = std::map<std::pair<long, int>, long>;
LiftTable load_lift_table(const std::filesystem::path& path);
Json lift_table_json(const LiftTable& table);

/// Pretty-printed JSON with a trailing newline.
std::string dump(const Json& j);

/// Collects the files of one run and writes manifest.json next to them.
class RunDirectory {
 public:
  RunDirectory(std::filesystem::path root, Json job);
  const std::filesystem::path& path() const { return root_; }
  void write(const std::string& name, const std::string& contents);
  /// Writes the manifest; call once at the end.
  void finish(bool ok);

 private:
  std::filesystem::path root_;
  Json job_;
  Json files_ = Json::array();
};

/// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string content_hash(const std::string& bytes);

}  // namespace bianchi
