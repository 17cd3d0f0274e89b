#pragma once

#include <string>
#include <vector>

#include "zenoclone/errors.hpp"

namespace zenoclone {

// Kinds of basis states in the zero/one-excitation sector of the network.
// FExc / EExc are symmetric collective excitations of one ensemble (exactly
// one atom promoted to |f> resp. |e>, shared evenly over all M atoms).
enum class StateKind { GlobalGround, FExc, EExc, CavityPhoton, FiberPhoton };

struct BasisLabel {
  StateKind kind = StateKind::GlobalGround;
  int node = 0;  // 1..N for FExc/EExc/CavityPhoton, 0 otherwise

  bool operator==(const BasisLabel&) const = default;
};

// Canonical ordering of the 3N+2 basis states:
//   0            GlobalGround
//   1, 2, 3      FExc(1), EExc(1), CavityPhoton(1)
//   4            FiberPhoton
//   3k-1, 3k, 3k+1  CavityPhoton(k), EExc(k), FExc(k)   for k = 2..N
class SubspaceBasis {
 public:
  explicit SubspaceBasis(int n_cavities) : n_(n_cavities) {
    if (n_ < 2)
      throw ConfigError("n_cavities must be >= 2, got " + std::to_string(n_));
    labels_.resize(dim());
    labels_[0] = {StateKind::GlobalGround, 0};
    labels_[1] = {StateKind::FExc, 1};
    labels_[2] = {StateKind::EExc, 1};
    labels_[3] = {StateKind::CavityPhoton, 1};
    labels_[4] = {StateKind::FiberPhoton, 0};
    for (int k = 2; k <= n_; ++k) {
      labels_[3 * k - 1] = {StateKind::CavityPhoton, k};
      labels_[3 * k] = {StateKind::EExc, k};
      labels_[3 * k + 1] = {StateKind::FExc, k};
    }
  }

  int n_cavities() const { return n_; }
  int dim() const { return 3 * n_ + 2; }

  const BasisLabel& label(int index) const {
    if (index < 0 || index >= dim())
      throw ConfigError("basis index " + std::to_string(index) + " outside 0.." +
                        std::to_string(dim() - 1));
    return labels_[index];
  }

  int index_of(const BasisLabel& l) const {
    switch (l.kind) {
      case StateKind::GlobalGround:
        return ground();
      case StateKind::FiberPhoton:
        return fiber();
      case StateKind::FExc:
        return f_exc(l.node);
      case StateKind::EExc:
        return e_exc(l.node);
      case StateKind::CavityPhoton:
        return cavity(l.node);
    }
    throw ConfigError("unknown basis label kind");
  }

  int ground() const { return 0; }
  int fiber() const { return 4; }
  int f_exc(int node) const { return node == 1 ? 1 : 3 * check_node(node) + 1; }
  int e_exc(int node) const { return node == 1 ? 2 : 3 * check_node(node); }
  int cavity(int node) const { return node == 1 ? 3 : 3 * check_node(node) - 1; }

  std::string name(int index) const {
    const BasisLabel& l = label(index);
    switch (l.kind) {
      case StateKind::GlobalGround:
        return "global_ground";
      case StateKind::FiberPhoton:
        return "fiber_photon";
      case StateKind::FExc:
        return "f_exc_" + std::to_string(l.node);
      case StateKind::EExc:
        return "e_exc_" + std::to_string(l.node);
      case StateKind::CavityPhoton:
        return "cavity_photon_" + std::to_string(l.node);
    }
    return "?";
  }

 private:
  int check_node(int node) const {
    if (node < 1 || node > n_)
      throw ConfigError("node " + std::to_string(node) + " outside 1.." +
                        std::to_string(n_));
    return node;
  }

  int n_;
  std::vector<BasisLabel> labels_;
};

inline SubspaceBasis enumerate_basis(int n_cavities) { return SubspaceBasis(n_cavities); }

}  // namespace zenoclone
