#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dlg/analyzer.hpp"
#include "dlg/support_graph.hpp"

namespace dlg {

// 64-bit FNV-1a over the canonical serialized form, as a hex token.
// Identical structures from different sources deduplicate.
std::string content_hash(const std::string& data);

// On-disk entity store: level-format fragments plus metadata and provenance
// documents keyed by content hash. Writes are atomic (write-then-rename);
// reads verify the stored hash.
class EntityRepository {
 public:
  EntityRepository(std::filesystem::path root, const Config& cfg);

  const std::filesystem::path& root() const { return root_; }

  // Stores the entity fragment; returns its content hash. Re-putting an
  // existing entity is a no-op.
  std::string put(const PhysicalEntity& entity, const std::string& provenance);

  PhysicalEntity get(const std::string& hash) const;
  bool has_metadata(const std::string& hash) const;
  EntityMetadata get_metadata(const std::string& hash) const;
  void put_metadata(const std::string& hash, const EntityMetadata& metadata);
  std::string provenance(const std::string& hash) const;

  // All stored entity hashes, sorted.
  std::vector<std::string> list() const;

  // Hashes of analyzed entities whose (entity, metadata) satisfy the filter.
  std::vector<std::string> query(
      const std::function<bool(const PhysicalEntity&, const EntityMetadata&)>&
          filter) const;

 private:
  std::filesystem::path entity_path(const std::string& hash) const;
  std::filesystem::path metadata_path(const std::string& hash) const;

  std::filesystem::path root_;
  Config cfg_;
};

// Serializes an entity as a standalone level-format fragment with
// deterministic object ordering; the basis of the content hash.
std::string entity_fragment(const PhysicalEntity& entity);
PhysicalEntity entity_from_fragment(const std::string& text, const Config& cfg);

void atomic_write(const std::filesystem::path& path, const std::string& data);

}  // namespace dlg
