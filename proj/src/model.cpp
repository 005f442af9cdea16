#include "dlg/model.hpp"

namespace dlg {

const char* to_string(Material m) {
  switch (m) {
    case Material::Wood: return "wood";
    case Material::Stone: return "stone";
    case Material::Ice: return "ice";
  }
  return "?";
}

const char* to_string(BirdType b) {
  switch (b) {
    case BirdType::Red: return "BirdRed";
    case BirdType::Blue: return "BirdBlue";
    case BirdType::Yellow: return "BirdYellow";
    case BirdType::Black: return "BirdBlack";
    case BirdType::White: return "BirdWhite";
  }
  return "?";
}

const char* to_string(ObjectKind k) {
  switch (k) {
    case ObjectKind::Block: return "Block";
    case ObjectKind::Pig: return "Pig";
    case ObjectKind::Tnt: return "TNT";
    case ObjectKind::Platform: return "Platform";
  }
  return "?";
}

std::optional<Material> material_from_string(const std::string& s) {
  if (s == "wood") return Material::Wood;
  if (s == "stone") return Material::Stone;
  if (s == "ice") return Material::Ice;
  return std::nullopt;
}

std::optional<BirdType> bird_from_string(const std::string& s) {
  if (s == "BirdRed") return BirdType::Red;
  if (s == "BirdBlue") return BirdType::Blue;
  if (s == "BirdYellow") return BirdType::Yellow;
  if (s == "BirdBlack") return BirdType::Black;
  if (s == "BirdWhite") return BirdType::White;
  return std::nullopt;
}

bool bird_has_power(BirdType b) { return b != BirdType::Red; }

const GameObject* Level::find(const std::string& id) const {
  for (const auto& o : objects)
    if (o.id == id) return &o;
  return nullptr;
}

LevelSummary level_summary(const Level& level) {
  LevelSummary s;
  for (const auto& o : level.objects) {
    s.total_objects++;
    switch (o.kind) {
      case ObjectKind::Pig: s.pigs++; break;
      case ObjectKind::Tnt: s.tnts++; break;
      case ObjectKind::Platform: s.platforms++; break;
      case ObjectKind::Block: s.blocks_per_material[o.material]++; break;
    }
  }
  for (BirdType b : level.birds) s.birds_per_type[b]++;
  return s;
}

const std::map<std::string, CatalogEntry>& block_catalog() {
  static const std::map<std::string, CatalogEntry> table = {
      {"SquareSmall", {1.0, 1.0}}, {"SquareBig", {2.0, 2.0}},
      {"RectSmall", {2.0, 0.5}},   {"RectMedium", {3.0, 0.5}},
      {"RectBig", {4.0, 0.5}},     {"RectFat", {2.0, 1.0}},
  };
  return table;
}

std::optional<CatalogEntry> catalog_lookup(ObjectKind kind,
                                           const std::string& type) {
  switch (kind) {
    case ObjectKind::Block: {
      auto it = block_catalog().find(type);
      if (it == block_catalog().end()) return std::nullopt;
      return it->second;
    }
    case ObjectKind::Pig:
      if (type == "BasicSmall") return CatalogEntry{0.9, 0.9};
      return std::nullopt;
    case ObjectKind::Tnt:
      return CatalogEntry{1.0, 1.0};
    case ObjectKind::Platform:
      return CatalogEntry{1.0, 0.25};  // scaled by scaleX/scaleY
  }
  return std::nullopt;
}

}  // namespace dlg
