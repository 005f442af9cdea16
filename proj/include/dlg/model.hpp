#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dlg/geometry.hpp"

namespace dlg {

enum class Material { Wood, Stone, Ice };
enum class BirdType { Red, Blue, Yellow, Black, White };
enum class ObjectKind { Block, Pig, Tnt, Platform };

const char* to_string(Material m);
const char* to_string(BirdType b);
const char* to_string(ObjectKind k);
std::optional<Material> material_from_string(const std::string& s);
std::optional<BirdType> bird_from_string(const std::string& s);

bool bird_has_power(BirdType b);

// One placed object. Platforms are static and carry no health; everything
// else is dynamic. Rotation is restricted to {0, pi/2} at authoring time.
struct GameObject {
  std::string id;
  ObjectKind kind = ObjectKind::Block;
  std::string type;                   // catalog name, e.g. "SquareSmall"
  Material material = Material::Wood; // blocks only
  Vec2 position;                      // center, world units
  double rotation = 0.0;              // radians
  double width = 1.0;                 // unrotated extent
  double height = 1.0;
  double health = 0.0;                // dynamic objects only

  bool is_dynamic() const { return kind != ObjectKind::Platform; }
  bool is_circle() const { return kind == ObjectKind::Pig; }
  Rect bounds() const {
    if (is_circle()) {
      double r = width * 0.5;
      return {{position.x - r, position.y - r}, {position.x + r, position.y + r}};
    }
    return obb_bounds(position, width * 0.5, height * 0.5, rotation);
  }
};

struct Level {
  Vec2 slingshot;
  std::vector<BirdType> birds;
  std::vector<GameObject> objects;
  Rect bounds{{-10.0, 0.0}, {70.0, 40.0}};

  const GameObject* find(const std::string& id) const;
};

struct LevelSummary {
  int pigs = 0;
  int tnts = 0;
  int platforms = 0;
  std::map<Material, int> blocks_per_material;
  std::map<BirdType, int> birds_per_type;
  int total_objects = 0;
};

LevelSummary level_summary(const Level& level);

// Thrown by parsing and model construction when an invariant is violated.
struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shape catalog for block/pig/TNT types. The clone's catalog is rectangular;
// sizes here are the generator's own table.
struct CatalogEntry {
  double width;
  double height;
};
const std::map<std::string, CatalogEntry>& block_catalog();
std::optional<CatalogEntry> catalog_lookup(ObjectKind kind,
                                           const std::string& type);

}  // namespace dlg
