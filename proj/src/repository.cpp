#include "dlg/repository.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dlg/level_xml.hpp"

namespace dlg {
namespace fs = std::filesystem;

std::string content_hash(const std::string& data) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

std::string entity_fragment(const PhysicalEntity& entity) {
  Level l;
  l.objects = entity.objects;
  std::sort(l.objects.begin(), l.objects.end(),
            [](const GameObject& a, const GameObject& b) { return a.id < b.id; });
  return serialize_level(l);
}

PhysicalEntity entity_from_fragment(const std::string& text,
                                    const Config& cfg) {
  Level l = parse_level(text, cfg, /*strict=*/false);
  if (l.objects.empty()) throw ModelError("entity fragment has no objects");
  PhysicalEntity e;
  e.objects = l.objects;
  e.bounding_box = tight_bounds(e.objects);
  return e;
}

void atomic_write(const fs::path& path, const std::string& data) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw ModelError("cannot write " + tmp.string());
    out << data;
  }
  fs::rename(tmp, path);
}

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("missing file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

EntityRepository::EntityRepository(fs::path root, const Config& cfg)
    : root_(std::move(root)), cfg_(cfg) {
  fs::create_directories(root_ / "entities");
  fs::create_directories(root_ / "metadata");
  fs::create_directories(root_ / "provenance");
}

fs::path EntityRepository::entity_path(const std::string& hash) const {
  return root_ / "entities" / (hash + ".xml");
}

fs::path EntityRepository::metadata_path(const std::string& hash) const {
  return root_ / "metadata" / (hash + ".json");
}

std::string EntityRepository::put(const PhysicalEntity& entity,
                                  const std::string& provenance) {
  std::string fragment = entity_fragment(entity);
  std::string hash = content_hash(fragment);
  if (!fs::exists(entity_path(hash))) {
    atomic_write(entity_path(hash), fragment);
    atomic_write(root_ / "provenance" / (hash + ".txt"), provenance + "\n");
  }
  return hash;
}

PhysicalEntity EntityRepository::get(const std::string& hash) const {
  std::string fragment = slurp(entity_path(hash));
  if (content_hash(fragment) != hash)
    throw ModelError("hash mismatch for entity " + hash + " (corruption)");
  PhysicalEntity e = entity_from_fragment(fragment, cfg_);
  e.source_id = hash;
  return e;
}

bool EntityRepository::has_metadata(const std::string& hash) const {
  return fs::exists(metadata_path(hash));
}

EntityMetadata EntityRepository::get_metadata(const std::string& hash) const {
  EntityMetadata m = metadata_from_json(slurp(metadata_path(hash)));
  if (m.entity_hash != hash)
    throw ModelError("metadata/entity hash mismatch for " + hash);
  return m;
}

void EntityRepository::put_metadata(const std::string& hash,
                                    const EntityMetadata& metadata) {
  EntityMetadata m = metadata;
  m.entity_hash = hash;
  atomic_write(metadata_path(hash), metadata_to_json(m));
}

std::string EntityRepository::provenance(const std::string& hash) const {
  return slurp(root_ / "provenance" / (hash + ".txt"));
}

std::vector<std::string> EntityRepository::list() const {
  std::vector<std::string> out;
  for (const auto& entry : fs::directory_iterator(root_ / "entities")) {
    if (entry.path().extension() == ".xml")
      out.push_back(entry.path().stem().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> EntityRepository::query(
    const std::function<bool(const PhysicalEntity&, const EntityMetadata&)>&
        filter) const {
  std::vector<std::string> out;
  for (const auto& hash : list()) {
    if (!has_metadata(hash)) continue;
    if (filter(get(hash), get_metadata(hash))) out.push_back(hash);
  }
  return out;
}

}  // namespace dlg
