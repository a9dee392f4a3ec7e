#pragma once

#include "crflat/jet.hpp"
#include "crflat/polynomial.hpp"

#include <string>
#include <vector>

namespace crflat {

enum class Model { Ball, Siegel };

const char* model_name(Model m);

// Components are rational functions of (z_1..z_n, w); n source CR dimension, N target.
struct MapSpec {
  Model model = Model::Siegel;
  int n = 0;
  int N = 0;
  std::vector<RationalFunction> components;
  std::string name;

  bool is_exact() const;
};

struct BoundaryPoint {
  std::vector<Scalar> z0;
  Scalar u0;

  static BoundaryPoint origin(int n);
  int arity() const { return static_cast<int>(z0.size()); }
  Scalar w0() const;
  bool is_exact() const;
  BoundaryPoint to_float() const;
  // The Heisenberg inverse, i.e. the point q with sigma0_p(q) = 0.
  BoundaryPoint negated() const { return {neg(z0), -u0}; }
  std::vector<Scalar> coordinates() const;

 private:
  static std::vector<Scalar> neg(const std::vector<Scalar>& v);
};

MapSpec parse_map(const std::string& text);
MapSpec load_map(const std::string& path);
MapSpec make_map(Model model, int n, int N, const std::vector<std::string>& components, const std::string& name = "");

enum class CayleyDirection { BallToSiegel, SiegelToBall };

// rho_n(z,w) = (2z/(1-iw), (1+iw)/(1-iw)) and its inverse (Z/(1+W), i(1-W)/(1+W)).
std::vector<RationalFunction> cayley_rho(int n);
std::vector<RationalFunction> cayley_rho_inverse(int n);
MapSpec cayley(CayleyDirection dir, const MapSpec& F);
MapSpec to_siegel(const MapSpec& F);

// outer o inner; outer.n must equal inner.N.
MapSpec compose_maps(const MapSpec& outer, const MapSpec& inner);

std::vector<Scalar> evaluate(const MapSpec& F, const std::vector<Scalar>& x);
std::vector<cplx> evaluate(const MapSpec& F, const std::vector<cplx>& x);

struct PointJets {
  std::vector<Scalar> value;  // F(p)
  JetVector holomorphic;      // F_p in (z, w)
  JetVector restricted;       // F_p in (z, zbar, u)
};

// Holomorphic jets of F o sigma0_p at 0.
JetVector translated_jets(const MapSpec& F, const BoundaryPoint& p, int order);
// Jets of F_p = tau_p o F o sigma0_p at 0.
PointJets jets_at(const MapSpec& F, const BoundaryPoint& p, int order);
// Restricted jet of sum |F_A|^2 + (i/2)(g - conj g) for F o sigma0_p.
Jet verify_proper(const MapSpec& F, int order, const BoundaryPoint& p);
Jet verify_proper(const MapSpec& F, int order);

// Heisenberg-chart jets of F o sigma0_p restricted to the hypersurface.
JetVector chart_jets(const MapSpec& F, const BoundaryPoint& p, int order);

// (z, w) coordinates of sigma0_p applied to the holomorphic identity jets.
JetVector sigma0_jets(const BoundaryPoint& p, int order);

}  // namespace crflat
