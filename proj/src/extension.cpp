#include "extension.hpp"

namespace hespeed::detail {

namespace {
constexpr EdgeCode kGraph[] = {EdgeCode::None, EdgeCode::Both};
constexpr EdgeCode kTournament[] = {EdgeCode::Forward, EdgeCode::Backward};
constexpr EdgeCode kOriented[] = {EdgeCode::None, EdgeCode::Forward, EdgeCode::Backward};
constexpr EdgeCode kDigraph[] = {EdgeCode::None, EdgeCode::Forward, EdgeCode::Backward,
                                 EdgeCode::Both};
}  // namespace

std::span<const EdgeCode> alphabet_for(ClassTag tag) {
  switch (tag) {
    case ClassTag::Graph: return kGraph;
    case ClassTag::Tournament: return kTournament;
    case ClassTag::Poset:
    case ClassTag::Oriented: return kOriented;
    case ClassTag::Digraph: break;
  }
  return kDigraph;
}

ClassTag common_class(std::span<const Structure> structures) {
  // Narrowest first; a poset is also oriented, a tournament also oriented.
  for (ClassTag tag : {ClassTag::Graph, ClassTag::Tournament, ClassTag::Poset,
                       ClassTag::Oriented}) {
    bool all = true;
    for (const auto& s : structures) {
      if (!is_class(s, tag)) {
        all = false;
        break;
      }
    }
    if (all) return tag;
  }
  return ClassTag::Digraph;
}

}  // namespace hespeed::detail
