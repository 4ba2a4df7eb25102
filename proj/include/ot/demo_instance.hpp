#pragma once

#include "ot/kantorovich.hpp"
#include "ot/measure.hpp"

namespace ot::demo {

// Built-in demonstration instance on the line: a uniform three-atom source,
// a two-atom target, and four plans in exact rationals.
//
// The first two plans split the mass of exactly one source atom (the first
// and the second respectively) and land in the same transport class; the
// other two split two atoms each with different traveling masses and sit in
// two further distinct classes.
struct SplitClassDemo {
  MeasureQ mu;  // uniform on x = 0, 1, 2
  MeasureQ nu;  // 1/6 at y = 0, 5/6 at y = 1
  PlanQ one_split_first;
  PlanQ one_split_second;
  PlanQ two_splits_a;
  PlanQ two_splits_b;
};

inline SplitClassDemo make_split_class_demo() {
  SplitClassDemo d;
  d.mu = MeasureQ::make({{0.0}, {1.0}, {2.0}}, {Rat(1, 3), Rat(1, 3), Rat(1, 3)});
  d.nu = MeasureQ::make({{0.0}, {1.0}}, {Rat(1, 6), Rat(5, 6)});

  auto plan = [&](std::vector<std::vector<Rat>> rows) {
    return PlanQ::make(d.mu, d.nu, Matrix<Rat>::from_rows(rows));
  };
  d.one_split_first = plan({{Rat(1, 6), Rat(1, 6)}, {Rat(0), Rat(1, 3)}, {Rat(0), Rat(1, 3)}});
  d.one_split_second = plan({{Rat(0), Rat(1, 3)}, {Rat(1, 6), Rat(1, 6)}, {Rat(0), Rat(1, 3)}});
  d.two_splits_a =
      plan({{Rat(3, 30), Rat(7, 30)}, {Rat(2, 30), Rat(8, 30)}, {Rat(0), Rat(1, 3)}});
  d.two_splits_b =
      plan({{Rat(1, 30), Rat(9, 30)}, {Rat(4, 30), Rat(6, 30)}, {Rat(0), Rat(1, 3)}});
  return d;
}

}  // namespace ot::demo
