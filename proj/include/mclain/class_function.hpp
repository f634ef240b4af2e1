#pragma once

// Class functions on pattern groups with exact cyclotomic values.
//
// Values are stored per conjugacy class rep, in the deterministic class
// order of the group.  Induction uses the class-intersection formula
//   ind(g) = [G:H] / |C_g| * sum_{h in H meet C_g} chi(h),
// one sweep over the subgroup instead of |G| conjugations per class.

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "mclain/cyclotomic.hpp"
#include "mclain/group.hpp"

namespace mclain {

class ClassFunction {
 public:
  ClassFunction() = default;
  ClassFunction(PatternGroupPtr group, std::vector<Cyc> values)
      : group_(std::move(group)),
        values_(std::make_shared<const std::vector<Cyc>>(std::move(values))) {
    if (values_->size() != group_->classes().count())
      throw std::invalid_argument("ClassFunction: value count != class count");
  }

  const PatternGroupPtr& group() const { return group_; }
  const std::vector<Cyc>& values() const { return *values_; }
  const Cyc& at_class(std::uint32_t i) const { return (*values_)[i]; }
  const Cyc& at(const Elem& e) const { return (*values_)[group_->classes().id(e)]; }
  const Cyc& degree() const { return (*values_)[0]; }

  bool same_group(const ClassFunction& o) const {
    return group_ == o.group_ ||
           (group_->ambient_ptr() == o.group_->ambient_ptr() && group_->gamma() == o.group_->gamma());
  }

  friend bool operator==(const ClassFunction& a, const ClassFunction& b) {
    return a.same_group(b) && *a.values_ == *b.values_;
  }
  friend bool operator!=(const ClassFunction& a, const ClassFunction& b) { return !(a == b); }

  friend ClassFunction operator+(const ClassFunction& a, const ClassFunction& b) {
    a.check_same(b);
    std::vector<Cyc> v = *a.values_;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += (*b.values_)[i];
    return ClassFunction(a.group_, std::move(v));
  }
  friend ClassFunction operator-(const ClassFunction& a, const ClassFunction& b) {
    a.check_same(b);
    std::vector<Cyc> v = *a.values_;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= (*b.values_)[i];
    return ClassFunction(a.group_, std::move(v));
  }
  friend ClassFunction operator*(const Rat& r, const ClassFunction& a) {
    std::vector<Cyc> v = *a.values_;
    for (auto& x : v) x = r * x;
    return ClassFunction(a.group_, std::move(v));
  }

  void check_same(const ClassFunction& o) const {
    if (!same_group(o)) throw std::invalid_argument("class functions on different groups");
  }

 private:
  PatternGroupPtr group_;
  std::shared_ptr<const std::vector<Cyc>> values_;
};

inline ClassFunction trivial_character(PatternGroupPtr g) {
  std::vector<Cyc> v(g->classes().count(), Cyc(1));
  return ClassFunction(std::move(g), std::move(v));
}

inline ClassFunction regular_character(PatternGroupPtr g) {
  std::vector<Cyc> v(g->classes().count(), Cyc(0));
  v[0] = Cyc(Rat(static_cast<std::int64_t>(g->order())));
  return ClassFunction(std::move(g), std::move(v));
}

inline ClassFunction class_function_from_linear(PatternGroupPtr g, const GroupLinearChar& chi) {
  const auto& cl = g->classes();
  std::vector<Cyc> v;
  v.reserve(cl.count());
  for (const auto& rep : cl.reps) v.push_back(chi.eval(rep));
  return ClassFunction(std::move(g), std::move(v));
}

// (a,b) = 1/|G| sum over classes of |C| a(C) conj(b(C))
inline Cyc inner_product(const ClassFunction& a, const ClassFunction& b) {
  a.check_same(b);
  const auto& cl = a.group()->classes();
  Cyc acc;
  for (std::uint32_t i = 0; i < cl.count(); ++i) {
    Cyc term = a.at_class(i) * b.at_class(i).conjugate();
    acc += Rat(cl.sizes[i]) * term;
  }
  Rat scale = Rat(1, static_cast<std::int64_t>(a.group()->order()));
  return scale * acc;
}

inline Rat inner_product_rat(const ClassFunction& a, const ClassFunction& b) {
  Cyc v = inner_product(a, b);
  if (!v.is_rational()) throw std::domain_error("inner_product: value not rational");
  return v.rational_part();
}

inline void check_subgroup(const PatternGroup& h, const PatternGroup& g, const char* op) {
  if (!h.is_subgroup_of(g))
    throw std::invalid_argument(std::string(op) + ": not a subgroup (ambient or pattern mismatch)");
}

inline ClassFunction induce(const ClassFunction& chi, PatternGroupPtr g) {
  const PatternGroupPtr& h = chi.group();
  check_subgroup(*h, *g, "induce");
  const auto& gcl = g->classes();
  const auto& hcl = h->classes();
  std::vector<Cyc> bucket(gcl.count(), Cyc(0));
  for (const auto& e : h->elements()) bucket[gcl.id(e)] += chi.at_class(hcl.id(e));
  Rat index(static_cast<std::int64_t>(g->order() / h->order()));
  std::vector<Cyc> v(gcl.count());
  for (std::uint32_t i = 0; i < gcl.count(); ++i)
    v[i] = (index / Rat(gcl.sizes[i])) * bucket[i];
  return ClassFunction(std::move(g), std::move(v));
}

// Same formula for a linear character given positionwise; skips building
// the subgroup's own class data, which the sweep paths never need.
inline ClassFunction induce_linear(const GroupLinearChar& lam, const PatternGroup& h,
                                   PatternGroupPtr g) {
  check_subgroup(h, *g, "induce_linear");
  const auto& gcl = g->classes();
  std::vector<Cyc> bucket(gcl.count(), Cyc(0));
  for (const auto& e : h.elements()) bucket[gcl.id(e)] += lam.eval(e);
  Rat index(static_cast<std::int64_t>(g->order() / h.order()));
  std::vector<Cyc> v(gcl.count());
  for (std::uint32_t i = 0; i < gcl.count(); ++i)
    v[i] = (index / Rat(gcl.sizes[i])) * bucket[i];
  return ClassFunction(std::move(g), std::move(v));
}

inline ClassFunction restrict_to(const ClassFunction& chi, PatternGroupPtr h) {
  const PatternGroupPtr& g = chi.group();
  check_subgroup(*h, *g, "restrict");
  const auto& hcl = h->classes();
  const auto& gcl = g->classes();
  std::vector<Cyc> v;
  v.reserve(hcl.count());
  for (const auto& rep : hcl.reps) v.push_back(chi.at_class(gcl.id(rep)));
  return ClassFunction(std::move(h), std::move(v));
}

inline ClassFunction tensor(const ClassFunction& a, const ClassFunction& b) {
  a.check_same(b);
  std::vector<Cyc> v = a.values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= b.at_class(i);
  return ClassFunction(a.group(), std::move(v));
}

// (g . chi)(x) = chi(g^-1 x g); requires g to normalize the group of chi,
// so the result lives on the same group.
inline ClassFunction conjugate_by(const ClassFunction& chi, const Elem& g) {
  const PatternGroupPtr& h = chi.group();
  const Ambient& amb = h->ambient();
  for (const auto& gen : h->generators())
    if (!h->contains(amb.conjugate(g, gen)))
      throw std::invalid_argument("conjugate_by: element does not normalize the group");
  Elem gi = amb.inverse(g);
  const auto& hcl = h->classes();
  std::vector<Cyc> v;
  v.reserve(hcl.count());
  for (const auto& rep : hcl.reps) v.push_back(chi.at(amb.mul(amb.mul(gi, rep), g)));
  return ClassFunction(h, std::move(v));
}

}  // namespace mclain
