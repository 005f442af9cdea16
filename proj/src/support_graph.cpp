#include "dlg/support_graph.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace dlg {

std::vector<std::string> SupportGraph::direct_supports(
    const std::string& id) const {
  std::vector<std::string> out;
  for (const auto& [upper, lower] : edges)
    if (upper == id) out.push_back(lower);
  return out;
}

int PhysicalEntity::pig_count() const {
  return int(std::count_if(objects.begin(), objects.end(), [](const auto& o) {
    return o.kind == ObjectKind::Pig;
  }));
}

int PhysicalEntity::tnt_count() const {
  return int(std::count_if(objects.begin(), objects.end(), [](const auto& o) {
    return o.kind == ObjectKind::Tnt;
  }));
}

Rect tight_bounds(const std::vector<GameObject>& objects) {
  Rect r = objects.front().bounds();
  for (const auto& o : objects) r = r.united(o.bounds());
  return r;
}

SupportGraph build_support_graph(const std::vector<GameObject>& objects,
                                 const Config& cfg) {
  SupportGraph g;
  for (const auto& o : objects) g.nodes.push_back(o.id);

  for (const auto& upper : objects) {
    Rect ub = upper.bounds();
    for (const auto& lower : objects) {
      if (&upper == &lower) continue;
      Rect lb = lower.bounds();
      double gap = ub.min.y - lb.max.y;
      if (std::abs(gap) > cfg.contact_tolerance) continue;
      double overlap =
          std::min(ub.max.x, lb.max.x) - std::max(ub.min.x, lb.min.x);
      if (overlap <= 0.0) continue;
      g.edges.emplace_back(upper.id, lower.id);
    }
  }

  // cycle check (an object cannot transitively rest on itself)
  std::map<std::string, int> state;  // 0 unvisited, 1 on stack, 2 done
  std::function<void(const std::string&)> dfs = [&](const std::string& id) {
    state[id] = 1;
    for (const auto& [upper, lower] : g.edges) {
      if (upper != id) continue;
      if (state[lower] == 1)
        throw ModelError("cyclic contact configuration at object '" + lower +
                         "'");
      if (state[lower] == 0) dfs(lower);
    }
    state[id] = 2;
  };
  for (const auto& n : g.nodes)
    if (state[n] == 0) dfs(n);
  return g;
}

std::set<std::string> supporters_of(const SupportGraph& graph,
                                    const std::string& id) {
  if (std::find(graph.nodes.begin(), graph.nodes.end(), id) ==
      graph.nodes.end())
    throw ModelError("unknown object id '" + id + "'");
  std::set<std::string> closure;
  std::vector<std::string> stack{id};
  while (!stack.empty()) {
    std::string cur = stack.back();
    stack.pop_back();
    for (const auto& [upper, lower] : graph.edges) {
      if (upper != cur) continue;
      if (closure.insert(lower).second) stack.push_back(lower);
    }
  }
  return closure;
}

namespace {

// Supporter closure that never traverses into platforms: platforms are
// static scenery and would otherwise weld unrelated entities together.
std::set<std::string> dynamic_supporters(
    const SupportGraph& graph, const std::map<std::string, const GameObject*>& by_id,
    const std::string& id) {
  std::set<std::string> closure;
  std::vector<std::string> stack{id};
  while (!stack.empty()) {
    std::string cur = stack.back();
    stack.pop_back();
    for (const auto& [upper, lower] : graph.edges) {
      if (upper != cur) continue;
      if (by_id.at(lower)->kind == ObjectKind::Platform) continue;
      if (closure.insert(lower).second) stack.push_back(lower);
    }
  }
  return closure;
}

}  // namespace

std::vector<PhysicalEntity> extract_entities(const Level& instance,
                                             const Config& cfg) {
  SupportGraph graph = build_support_graph(instance.objects, cfg);
  std::map<std::string, const GameObject*> by_id;
  for (const auto& o : instance.objects) by_id[o.id] = &o;

  std::vector<std::string> remaining;
  for (const auto& o : instance.objects) remaining.push_back(o.id);

  std::vector<PhysicalEntity> entities;
  int entity_index = 0;
  while (!remaining.empty()) {
    // topmost = highest top edge; ties leftmost, then by id
    std::string top = remaining.front();
    for (const auto& id : remaining) {
      Rect a = by_id.at(id)->bounds();
      Rect b = by_id.at(top)->bounds();
      if (a.max.y > b.max.y ||
          (a.max.y == b.max.y &&
           (a.min.x < b.min.x || (a.min.x == b.min.x && id < top))))
        top = id;
    }

    std::set<std::string> selected{top};
    for (const auto& s : dynamic_supporters(graph, by_id, top))
      if (std::count(remaining.begin(), remaining.end(), s)) selected.insert(s);

    std::vector<GameObject> objs;
    for (const auto& id : selected) objs.push_back(*by_id.at(id));
    Rect box = tight_bounds(objs);
    for (;;) {
      bool grew = false;
      for (const auto& id : remaining) {
        if (selected.count(id)) continue;
        if (box.contains(by_id.at(id)->position)) {
          selected.insert(id);
          grew = true;
        }
      }
      if (!grew) break;
      objs.clear();
      for (const auto& id : selected) objs.push_back(*by_id.at(id));
      Rect next = tight_bounds(objs);
      if (next.width() <= box.width() && next.height() <= box.height()) {
        box = next;
        break;
      }
      box = next;
    }

    PhysicalEntity entity;
    for (const auto& id : selected) entity.objects.push_back(*by_id.at(id));
    std::sort(entity.objects.begin(), entity.objects.end(),
              [](const GameObject& a, const GameObject& b) { return a.id < b.id; });
    entity.bounding_box = tight_bounds(entity.objects);
    entity.source_id = "e" + std::to_string(entity_index++);
    entities.push_back(std::move(entity));

    remaining.erase(std::remove_if(remaining.begin(), remaining.end(),
                                   [&](const std::string& id) {
                                     return selected.count(id) != 0;
                                   }),
                    remaining.end());
  }
  return entities;
}

}  // namespace dlg
