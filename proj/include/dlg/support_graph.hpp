#pragma once

#include <set>
#include <string>
#include <vector>

#include "dlg/config.hpp"
#include "dlg/model.hpp"

namespace dlg {

// Directed support relation: an edge (upper -> lower) means `lower` directly
// supports `upper` (upper's bottom edge rests on lower's top edge). Objects
// seated on the ground have out-degree 0.
struct SupportGraph {
  std::vector<std::string> nodes;
  std::vector<std::pair<std::string, std::string>> edges;  // (upper, lower)

  std::vector<std::string> direct_supports(const std::string& id) const;
};

// A self-contained set of physically stable objects with its tight
// axis-aligned hull.
struct PhysicalEntity {
  std::vector<GameObject> objects;
  Rect bounding_box;
  std::string source_id;

  int pig_count() const;
  int tnt_count() const;
};

// Edge (upper -> lower) iff upper's bottom edge contacts lower's top edge
// within the configured vertical tolerance with positive horizontal overlap.
// Throws ModelError on a cyclic contact configuration.
SupportGraph build_support_graph(const std::vector<GameObject>& objects,
                                 const Config& cfg);

// Transitive closure of outgoing edges. Throws ModelError for unknown ids.
std::set<std::string> supporters_of(const SupportGraph& graph,
                                    const std::string& id);

// Iteratively extracts entities: seed with the topmost remaining object plus
// its supporters, then absorb objects whose centers fall inside the growing
// bounding box until the box stops growing. The result partitions the
// non-bird objects of the level.
std::vector<PhysicalEntity> extract_entities(const Level& instance,
                                             const Config& cfg);

Rect tight_bounds(const std::vector<GameObject>& objects);

}  // namespace dlg
