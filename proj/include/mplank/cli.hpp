#pragma once

// Subcommands of the `multiplank` tool. Each returns a Report; exit code 0
// when every verdict holds, 1 on a violated property, 2 on bad input.

#include "mplank/scene.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace mplank {

struct CommandOptions {
  std::optional<std::size_t> budget;  // per-command default when unset
  std::optional<std::uint64_t> seed;  // overrides the scene seed
  int resolution = 512;
  int k = 1;
  std::optional<double> eps_geom;
  std::optional<double> eps_opt;
  bool closed = false;
  bool timing = false;
  bool strata = false;
  std::string out;
  int sharp_n = 10;
  double sharp_r = 0.6;
  bool bisect = false;
};

Report cmd_meb(const Scene& s, const CommandOptions& o);
Report cmd_inradii(const Scene& s, const CommandOptions& o);
Report cmd_plank_check(const Scene& s, const CommandOptions& o);
Report cmd_stratify(const Scene& s, const CommandOptions& o);
Report cmd_verify(const Scene& s, const CommandOptions& o);
Report cmd_pizza(const Scene& s, const CommandOptions& o);
Report cmd_sharpness(const Scene& s, const CommandOptions& o);
Report cmd_normed(const Scene& s, const CommandOptions& o);
/// Writes the SVG to o.out.
Report cmd_render(const Scene& s, const CommandOptions& o);

/// Full command line: parses, runs, prints the report JSON to `out`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mplank
