#ifndef NG_CONFIGURATION_HPP
#define NG_CONFIGURATION_HPP

#include <array>
#include <cstddef>
#include <vector>

#include "ng/model.hpp"

namespace ng {

// Vertex -> state assignment with cached type counts.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(std::size_t n, VertexState fill = VertexState::B);
  explicit Configuration(std::vector<VertexState> states);

  // All B except one bilingual at `vertex` (the invasion start).
  static Configuration single_ab(std::size_t n, std::size_t vertex);

  std::size_t size() const { return states_.size(); }
  VertexState at(std::size_t v) const { return states_[v]; }
  const std::vector<VertexState>& states() const { return states_; }

  void set(std::size_t v, VertexState s);

  std::size_t count(VertexState s) const {
    return counts_[static_cast<int>(s)];
  }
  std::size_t n_a() const { return count(VertexState::A); }
  std::size_t n_b() const { return count(VertexState::B); }
  std::size_t n_ab() const { return count(VertexState::AB); }

  bool all(VertexState s) const { return count(s) == states_.size(); }

  bool operator==(const Configuration& other) const {
    return states_ == other.states_;
  }

 private:
  std::vector<VertexState> states_;
  std::array<std::size_t, 3> counts_{};
};

}  // namespace ng

#endif  // NG_CONFIGURATION_HPP
