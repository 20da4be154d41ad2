#ifndef NG_MODEL_HPP
#define NG_MODEL_HPP

#include <array>
#include <cstdint>
#include <string>

namespace ng {

// Vertex states in canonical rank order (A < AB < B).  The rank order is
// what the pair kernel uses to canonicalize unordered edges.
enum class VertexState : std::uint8_t { A = 0, AB = 1, B = 2 };

inline const char* to_string(VertexState s) {
  switch (s) {
    case VertexState::A: return "A";
    case VertexState::AB: return "AB";
    default: return "B";
  }
}

VertexState parse_state(const std::string& s);

struct FitnessParams {
  double phi_A = 1.0;
  double phi_B = 1.0;

  double ratio() const { return phi_A / phi_B; }

  static FitnessParams from_ratio(double phi) { return {phi, 1.0}; }
};

// All interaction probabilities derived from the fitness ratio phi.
// Everything is computed from phi alone so that derive(2,1) and derive(4,2)
// are bit-identical.
struct DerivedProbs {
  double phi = 1.0;
  double phi_AB = 1.0;  // (phi_A + phi_B)/2 in phi_B = 1 units

  // p[X][Y] = probability that the X-individual speaks in an (X,Y) pair,
  // indexed by VertexState rank.
  std::array<std::array<double, 3>, 3> p{};

  double q_A = 0.25;  // P(word A pronounced in an AB-B conversation)
  double q_B = 0.25;  // P(word B pronounced in an AB-A conversation)
  double r = 0.5;     // q_A + q_B, the interface branching rate

  double speak(VertexState x, VertexState y) const {
    return p[static_cast<int>(x)][static_cast<int>(y)];
  }
  double p_ab() const { return speak(VertexState::A, VertexState::B); }
  double p_ba() const { return speak(VertexState::B, VertexState::A); }
};

// Throws std::domain_error unless both fitnesses are positive.
DerivedProbs derive(const FitnessParams& params);

// Rows of the pair-transition table.  The letter says which word was
// pronounced; the digit identifies the interacting pair.
enum class TransitionLabel : std::uint8_t {
  L1A, L2A, L2B, L3A, L3B, L4A, L4B, L5A, L5B, L6B
};

const char* to_string(TransitionLabel label);

struct PairOutcome {
  VertexState new_x;
  VertexState new_y;
  TransitionLabel label;

  bool changed(VertexState old_x, VertexState old_y) const {
    return new_x != old_x || new_y != old_y;
  }
};

// Single-conversation kernel: the unordered pair is canonicalized by state
// rank, the table row thresholds are applied to the uniform mark u with
// strict "<", and the outcome is mapped back to the caller's order.
PairOutcome pair_transition(VertexState x, VertexState y, double u,
                            const DerivedProbs& probs);

}  // namespace ng

#endif  // NG_MODEL_HPP
