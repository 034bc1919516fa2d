#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "harmext/checks.hpp"
#include "harmext/harmonic.hpp"
#include "harmext/map_spec.hpp"

namespace harmext::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { exit_ok = 0, exit_check_failed = 1, exit_input_error = 2 };

// Raised for unreadable or malformed user input.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string map = "identity";
  GridSpec grid{};
  int samples = 200;
  std::uint64_t seed = 1;
  double tol_scale = 1.0;
  std::string out;
  std::string csv;
  std::string surface = "sigma";
  double t = 0.0;
  bool timing = false;
};

void validate(const RunConfig& cfg);

// "NRxNA", e.g. "64x256".
std::pair<int, int> parse_grid(const std::string& text);

// A JSON map-spec file, or a builtin as name[:key=value,...].
MapSpec load_map(const std::string& source);
MapSpec map_from_json(const nlohmann::json& doc);

nlohmann::json analyze_report(const MapSpec& spec, const RunConfig& cfg);
nlohmann::json verification_json(const VerificationReport& rep, bool timing);

struct Mesh {
  std::string name;
  std::vector<Point3> vertices;
  std::vector<std::array<std::size_t, 3>> faces;  // zero-based
  std::size_t dropped = 0;
};

// Surface over the polar grid: sigma, sigma-star, shell or sphere-image.
Mesh surface_mesh(const MapSpec& spec, const std::string& surface, double t, const GridSpec& grid);
void write_obj(std::ostream& os, const Mesh& mesh);

struct PlanarSample {
  Complex z{};
  std::optional<Complex> value;
  double dilatation = 1.0;
  bool flagged = false;
};

std::vector<PlanarSample> planar_samples(const MapSpec& spec, const GridSpec& grid);

int cmd_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_extend(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_dilatation(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_planar(const RunConfig& cfg, std::ostream& out, std::ostream& log);

// Parses argv and dispatches; returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace harmext::cli
