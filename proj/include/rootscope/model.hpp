#pragma once

#include "rootscope/catalog.hpp"
#include "rootscope/rootspace.hpp"

namespace rootscope {

/// A catalog algebra together with its Cartan data and root decomposition.
struct Model {
  AlgebraSpec spec;
  LieAlgebra algebra;
  CartanData cartan;
  RootDatum datum;
};

inline Model analyze(const AlgebraSpec& spec, const DecomposeOptions& opt = {}) {
  auto built = build(spec);
  RootDatum datum = decompose(built.algebra, built.cartan, opt);
  return {spec, std::move(built.algebra), std::move(built.cartan), std::move(datum)};
}

}  // namespace rootscope
