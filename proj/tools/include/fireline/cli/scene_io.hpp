#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "fireline/geometry.hpp"
#include "fireline/params.hpp"

namespace fireline::cli {

class SceneParseError : public std::runtime_error {
 public:
  SceneParseError(const std::string& where, int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

struct SceneFile {
  Scene scene;
  Params params;
};

// Text format:
//   fireline-scene 1
//   [params]   key value      (sigma, c0 and the solver knobs)
//   [discs]    cx cy r
//   [segments] x0 y0 x1 y1
// '#' starts a comment. Unknown keys and sections are errors.
SceneFile read_scene(std::istream& is, const std::string& name = "<input>");
SceneFile load_scene(const std::string& path);
void write_scene(std::ostream& os, const Scene& scene, const Params& params);
void save_scene(const std::string& path, const Scene& scene, const Params& params);

}  // namespace fireline::cli
