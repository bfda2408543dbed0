#ifndef SVGD_COMMON_HPP
#define SVGD_COMMON_HPP

#include <Eigen/Core>
#include <stdexcept>
#include <string>

namespace svgd {

// Particle ensembles are dense row-major collections: row i holds particle i.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Thrown when an update produces a non-finite coordinate. Runs abort rather
/// than clamp, so downstream statistics never see corrupted states.
class BlowupError : public std::runtime_error {
 public:
  BlowupError(int particle, int iteration)
      : std::runtime_error("non-finite coordinate for particle " +
                           std::to_string(particle) +
                           (iteration >= 0
                                ? " at iteration " + std::to_string(iteration)
                                : std::string{})),
        particle(particle),
        iteration(iteration) {}

  int particle;
  int iteration;  // -1 when unknown
};

/// Thrown on malformed dataset or configuration input.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what, long line = -1)
      : std::runtime_error(line >= 0 ? what + " (line " + std::to_string(line) + ")"
                                     : what),
        line(line) {}

  long line;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw std::invalid_argument(message);
}

}  // namespace svgd

#endif
