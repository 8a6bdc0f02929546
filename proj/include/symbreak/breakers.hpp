#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "symbreak/layout.hpp"
#include "symbreak/model.hpp"
#include "symbreak/perm.hpp"
#include "symbreak/poly.hpp"
#include "symbreak/rng.hpp"

namespace symbreak {

// Base polynomial templates. Each `x` is a random 0/1-coefficient linear form
// in assignment variables, each `y` one in bin-use variables; squares are
// products of two distinct linear forms.
enum class Template { X, Y, XPlusY, X2, Y2, XY, X2PlusY2, XPlusY2, X2PlusY };

enum class TemplateCategory { Linear, Quadratic, Mixed };

inline TemplateCategory category(Template t) {
  switch (t) {
    case Template::X:
    case Template::Y:
    case Template::XPlusY: return TemplateCategory::Linear;
    case Template::X2:
    case Template::Y2:
    case Template::XY:
    case Template::X2PlusY2: return TemplateCategory::Quadratic;
    case Template::XPlusY2:
    case Template::X2PlusY: return TemplateCategory::Mixed;
  }
  throw std::logic_error("unknown template");
}

inline const char* to_string(Template t) {
  switch (t) {
    case Template::X: return "x";
    case Template::Y: return "y";
    case Template::XPlusY: return "x+y";
    case Template::X2: return "x2";
    case Template::Y2: return "y2";
    case Template::XY: return "xy";
    case Template::X2PlusY2: return "x2+y2";
    case Template::XPlusY2: return "x+y2";
    case Template::X2PlusY: return "x2+y";
  }
  throw std::logic_error("unknown template");
}

inline Template template_from_string(const std::string& s) {
  for (Template t : {Template::X, Template::Y, Template::XPlusY, Template::X2, Template::Y2,
                     Template::XY, Template::X2PlusY2, Template::XPlusY2, Template::X2PlusY})
    if (s == to_string(t)) return t;
  throw std::invalid_argument("unknown template '" + s + "'");
}

inline const std::vector<Template>& all_templates() {
  static const std::vector<Template> all = {
      Template::X,  Template::Y,  Template::XPlusY,   Template::X2,      Template::Y2,
      Template::XY, Template::X2PlusY2, Template::XPlusY2, Template::X2PlusY};
  return all;
}

// Size subclass: how many distinct variables the base polynomial targets and
// how many permutations are sampled for the family.
struct SizeProfile {
  std::string label;
  std::uint32_t target_vars = 10;
  std::uint32_t perm_count = 50;
  std::uint32_t generator_product_length = 50;
};

inline SizeProfile profile_few_few() { return {"few_few", 10, 50, 50}; }
inline SizeProfile profile_few_many() { return {"few_many", 10, 500, 50}; }
inline SizeProfile profile_many_few() { return {"many_few", 1000, 50, 50}; }
inline SizeProfile profile_numerous_few() { return {"numerous_few", 4000, 50, 50}; }

inline SizeProfile profile_from_string(const std::string& label) {
  for (const SizeProfile& p :
       {profile_few_few(), profile_few_many(), profile_many_few(), profile_numerous_few()})
    if (label == p.label) return p;
  throw std::invalid_argument("unknown size profile '" + label + "'");
}

// Distinct-variable budget per template at the "few" scale (target 10);
// scales linearly with the profile target.
inline std::uint32_t template_var_budget(Template t, std::uint32_t target_vars) {
  std::uint32_t base = 0;
  switch (t) {
    case Template::X:
    case Template::Y:
    case Template::XPlusY: base = 10; break;
    case Template::X2:
    case Template::Y2:
    case Template::XY: base = 9; break;
    case Template::X2PlusY2: base = 18; break;
    case Template::XPlusY2:
    case Template::X2PlusY: base = 16; break;
  }
  const std::uint64_t scaled = (static_cast<std::uint64_t>(base) * target_vars + 5) / 10;
  return static_cast<std::uint32_t>(std::max<std::uint64_t>(1, scaled));
}

// Sum of `count` distinct variables drawn without replacement from the pool,
// each with coefficient 1.
inline Polynomial random_linear(const std::vector<VarIndex>& var_pool, std::size_t count, Rng& rng) {
  if (count > var_pool.size())
    throw std::invalid_argument("support size " + std::to_string(count) +
                                " exceeds pool of " + std::to_string(var_pool.size()));
  Polynomial p;
  for (std::uint64_t pos : rng.sample_distinct(var_pool.size(), count))
    p = p + Polynomial::var(var_pool[pos]);
  return p;
}

namespace detail {

// Uniform index pools over the layout, never materialised: position t of the
// x pool is item (t % m + 1) in bin (t / m + 1).
struct XPool {
  VarLayout layout;
  std::uint64_t size() const {
    return static_cast<std::uint64_t>(layout.items) * layout.bins;
  }
  VarIndex at(std::uint64_t t) const {
    return layout.x_index(static_cast<std::uint32_t>(t % layout.items) + 1,
                          static_cast<std::uint32_t>(t / layout.items) + 1);
  }
};

struct YPool {
  VarLayout layout;
  std::uint64_t size() const { return layout.bins; }
  VarIndex at(std::uint64_t t) const {
    return layout.y_index(static_cast<std::uint32_t>(t) + 1);
  }
};

template <class Pool>
Polynomial linear_form(const Pool& pool, const std::vector<std::uint64_t>& positions,
                       std::size_t begin, std::size_t end) {
  Polynomial p;
  for (std::size_t i = begin; i < end; ++i) p = p + Polynomial::var(pool.at(positions[i]));
  return p;
}

// One linear form of `budget` variables, clamped to the pool.
template <class Pool>
Polynomial sample_linear_part(const Pool& pool, std::uint32_t budget, Rng& rng) {
  if (pool.size() == 0) throw std::invalid_argument("empty variable pool");
  const std::size_t support = static_cast<std::size_t>(
      std::min<std::uint64_t>(std::max<std::uint32_t>(budget, 1), pool.size()));
  const auto positions = rng.sample_distinct(pool.size(), support);
  return linear_form(pool, positions, 0, positions.size());
}

// Product of two distinct linear forms with disjoint supports splitting the
// budget as ceil/floor; squares in the templates mean exactly this.
template <class Pool>
Polynomial sample_product_part(const Pool& pool, std::uint32_t budget, Rng& rng) {
  if (pool.size() < 2)
    throw std::invalid_argument("pool too small for a product of two distinct linear forms");
  std::uint64_t a = (std::max<std::uint32_t>(budget, 2) + 1) / 2;
  std::uint64_t c = std::max<std::uint32_t>(budget, 2) / 2;
  a = std::min<std::uint64_t>(a, pool.size() - 1);
  c = std::min<std::uint64_t>(c, pool.size() - a);
  const auto positions = rng.sample_distinct(pool.size(), a + c);
  const Polynomial lhs = linear_form(pool, positions, 0, static_cast<std::size_t>(a));
  const Polynomial rhs = linear_form(pool, positions, static_cast<std::size_t>(a), positions.size());
  return lhs * rhs;
}

}  // namespace detail

// Random base polynomial for the template at the profile's variable scale.
// x-parts draw from assignment variables, y-parts from bin-use variables.
inline Polynomial instantiate_template(Template t, const SizeProfile& profile,
                                       const VarLayout& layout, Rng& rng) {
  const detail::XPool xs{layout};
  const detail::YPool ys{layout};
  const std::uint32_t budget = template_var_budget(t, profile.target_vars);
  const std::uint32_t hi = (budget + 1) / 2, lo = budget / 2;

  switch (t) {
    case Template::X: return detail::sample_linear_part(xs, budget, rng);
    case Template::Y: return detail::sample_linear_part(ys, budget, rng);
    case Template::XPlusY:
      return detail::sample_linear_part(xs, hi, rng) + detail::sample_linear_part(ys, lo, rng);
    case Template::X2: return detail::sample_product_part(xs, budget, rng);
    case Template::Y2: return detail::sample_product_part(ys, budget, rng);
    case Template::XY:
      return detail::sample_linear_part(xs, hi, rng) * detail::sample_linear_part(ys, lo, rng);
    case Template::X2PlusY2:
      return detail::sample_product_part(xs, hi, rng) + detail::sample_product_part(ys, lo, rng);
    case Template::XPlusY2:
      return detail::sample_linear_part(xs, hi, rng) + detail::sample_product_part(ys, lo, rng);
    case Template::X2PlusY:
      return detail::sample_product_part(xs, hi, rng) + detail::sample_linear_part(ys, lo, rng);
  }
  throw std::logic_error("unknown template");
}

// One base polynomial, many sampled permutations, the surviving inequalities
// h(Px) - h(x) <= 0.
struct BreakerFamily {
  Polynomial base;
  std::vector<Permutation> perms;     // aligned with `breakers`
  std::vector<Polynomial> breakers;   // retained g = h(Px) - h(x)

  std::string instance_id;
  Template tmpl = Template::X;
  SizeProfile profile;
  std::uint64_t seed = 0;

  std::uint32_t sampled = 0;
  std::uint32_t dropped_zero = 0;
  std::uint32_t dropped_linear = 0;     // mixed templates only
  std::uint32_t dropped_duplicate = 0;

  std::size_t kept() const { return breakers.size(); }
};

// Draws profile.perm_count generator products, forms g = h(Px) - h(x), drops
// zero polynomials, drops non-quadratic survivors for mixed templates (the
// quadratic terms may cancel, and linear breakers are measured separately),
// and deduplicates by canonical equality.
inline BreakerFamily generate_family(const Polynomial& h, Template t, const VarLayout& layout,
                                     const SizeBoundaries& boundaries, const SizeProfile& profile,
                                     Rng& rng) {
  if (h.is_zero()) throw std::invalid_argument("base polynomial must be nonzero");
  BreakerFamily fam;
  fam.base = h;
  fam.tmpl = t;
  fam.profile = profile;
  const bool mixed = category(t) == TemplateCategory::Mixed;

  std::set<std::string> seen;
  for (std::uint32_t s = 0; s < profile.perm_count; ++s) {
    ++fam.sampled;
    Permutation p =
        random_generator_product(layout, boundaries, profile.generator_product_length, rng);
    Polynomial g = h.apply_permutation(p) - h;
    if (g.is_zero()) {
      ++fam.dropped_zero;
      continue;
    }
    if (mixed && g.classify() != PolyClass::HasQuadratic) {
      ++fam.dropped_linear;
      continue;
    }
    if (!seen.insert(g.render()).second) {
      ++fam.dropped_duplicate;
      continue;
    }
    fam.perms.push_back(std::move(p));
    fam.breakers.push_back(std::move(g));
  }
  return fam;
}

// New model with the family's inequalities appended as side constraints
// g <= 0; already-present polynomials are not duplicated.
inline IPModel attach(const IPModel& model, const BreakerFamily& family) {
  IPModel out = model;
  std::set<std::string> present;
  for (const Polynomial& p : out.side_constraints) present.insert(p.render());
  for (const Polynomial& g : family.breakers)
    if (present.insert(g.render()).second) out.side_constraints.push_back(g);
  return out;
}

// Family files: a JSON manifest plus a `.breakers` sidecar holding one
// canonical-text polynomial per line.
inline std::string breakers_sidecar_path(const std::string& manifest_path) {
  const std::size_t dot = manifest_path.rfind(".json");
  return (dot == std::string::npos ? manifest_path : manifest_path.substr(0, dot)) + ".breakers";
}

inline void write_family(const BreakerFamily& fam, const std::string& manifest_path) {
  nlohmann::ordered_json j;
  j["instance_id"] = fam.instance_id;
  j["template"] = to_string(fam.tmpl);
  j["profile"] = fam.profile.label;
  j["seed"] = fam.seed;
  j["kept"] = fam.kept();
  j["dropped_zero"] = fam.dropped_zero;
  j["dropped_linear"] = fam.dropped_linear;
  j["dropped_duplicate"] = fam.dropped_duplicate;
  j["sampled"] = fam.sampled;
  j["target_vars"] = fam.profile.target_vars;
  j["perm_count"] = fam.profile.perm_count;
  j["generator_product_length"] = fam.profile.generator_product_length;
  j["base"] = fam.base.render();

  std::ofstream mf(manifest_path);
  if (!mf) throw std::runtime_error("cannot open " + manifest_path + " for writing");
  mf << j.dump(2) << "\n";

  const std::string side = breakers_sidecar_path(manifest_path);
  std::ofstream bf(side);
  if (!bf) throw std::runtime_error("cannot open " + side + " for writing");
  for (const Polynomial& g : fam.breakers) bf << g.render() << "\n";
}

// Reads manifest + sidecar. Permutations are not persisted; a loaded family
// carries the inequalities and provenance only.
inline BreakerFamily read_family(const std::string& manifest_path) {
  std::ifstream mf(manifest_path);
  if (!mf) throw std::runtime_error("cannot open family manifest " + manifest_path);
  nlohmann::json j = nlohmann::json::parse(mf);

  BreakerFamily fam;
  fam.instance_id = j.value("instance_id", "");
  fam.tmpl = template_from_string(j.at("template").get<std::string>());
  fam.profile.label = j.at("profile").get<std::string>();
  fam.profile.target_vars = j.value("target_vars", 0U);
  fam.profile.perm_count = j.value("perm_count", 0U);
  fam.profile.generator_product_length = j.value("generator_product_length", 50U);
  fam.seed = j.value("seed", 0ULL);
  fam.sampled = j.value("sampled", 0U);
  fam.dropped_zero = j.value("dropped_zero", 0U);
  fam.dropped_linear = j.value("dropped_linear", 0U);
  fam.dropped_duplicate = j.value("dropped_duplicate", 0U);
  if (j.contains("base")) fam.base = Polynomial::parse(j["base"].get<std::string>());

  std::ifstream bf(breakers_sidecar_path(manifest_path));
  if (!bf) throw std::runtime_error("missing breakers sidecar for " + manifest_path);
  std::string line;
  while (std::getline(bf, line)) {
    if (line.empty()) continue;
    fam.breakers.push_back(Polynomial::parse(line));
  }
  return fam;
}

}  // namespace symbreak
