#include "ng/model.hpp"

#include <stdexcept>
#include <utility>

namespace ng {

VertexState parse_state(const std::string& s) {
  if (s == "A") return VertexState::A;
  if (s == "B") return VertexState::B;
  if (s == "AB") return VertexState::AB;
  throw std::invalid_argument("unknown vertex state: " + s);
}

const char* to_string(TransitionLabel label) {
  switch (label) {
    case TransitionLabel::L1A: return "1A";
    case TransitionLabel::L2A: return "2A";
    case TransitionLabel::L2B: return "2B";
    case TransitionLabel::L3A: return "3A";
    case TransitionLabel::L3B: return "3B";
    case TransitionLabel::L4A: return "4A";
    case TransitionLabel::L4B: return "4B";
    case TransitionLabel::L5A: return "5A";
    case TransitionLabel::L5B: return "5B";
    default: return "6B";
  }
}

DerivedProbs derive(const FitnessParams& params) {
  if (!(params.phi_A > 0.0) || !(params.phi_B > 0.0)) {
    throw std::domain_error("fitness values must be positive");
  }
  DerivedProbs d;
  const double phi = params.phi_A / params.phi_B;
  d.phi = phi;
  d.phi_AB = 0.5 * (phi + 1.0);

  // Fitness of each state in phi_B = 1 units; p[X][Y] = f_X / (f_X + f_Y).
  const std::array<double, 3> fitness = {phi, d.phi_AB, 1.0};
  for (int x = 0; x < 3; ++x) {
    for (int y = 0; y < 3; ++y) {
      d.p[x][y] = fitness[x] / (fitness[x] + fitness[y]);
    }
  }

  // Closed forms q_A = p_{AB->B} p_{A->B} = phi/(phi+3) and
  // q_B = p_{AB->A} p_{B->A} = 1/(3 phi+1), kept in this canonical form so
  // scale invariance is bit-exact.
  d.q_A = phi / (phi + 3.0);
  d.q_B = 1.0 / (3.0 * phi + 1.0);
  d.r = d.q_A + d.q_B;
  return d;
}

namespace {

// Table rows for the canonical order (rank(x) <= rank(y)).
PairOutcome canonical_transition(VertexState x, VertexState y, double u,
                                 const DerivedProbs& d) {
  using S = VertexState;
  using L = TransitionLabel;
  if (x == S::A && y == S::A) return {S::A, S::A, L::L1A};
  if (x == S::B && y == S::B) return {S::B, S::B, L::L6B};
  if (x == S::A && y == S::AB) {
    return u < 1.0 - d.q_B ? PairOutcome{S::A, S::A, L::L2A}
                           : PairOutcome{S::AB, S::AB, L::L2B};
  }
  if (x == S::A && y == S::B) {
    return u < d.p_ab() ? PairOutcome{S::A, S::AB, L::L3A}
                        : PairOutcome{S::AB, S::B, L::L3B};
  }
  if (x == S::AB && y == S::AB) {
    return u < d.p_ab() ? PairOutcome{S::A, S::A, L::L4A}
                        : PairOutcome{S::B, S::B, L::L4B};
  }
  // (AB, B)
  return u < d.q_A ? PairOutcome{S::AB, S::AB, L::L5A}
                   : PairOutcome{S::B, S::B, L::L5B};
}

}  // namespace

PairOutcome pair_transition(VertexState x, VertexState y, double u,
                            const DerivedProbs& probs) {
  if (static_cast<int>(x) <= static_cast<int>(y)) {
    return canonical_transition(x, y, u, probs);
  }
  PairOutcome out = canonical_transition(y, x, u, probs);
  std::swap(out.new_x, out.new_y);
  return out;
}

}  // namespace ng
