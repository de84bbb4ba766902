#pragma once

#include "ptops/fincat.hpp"

// Shared fixture sites used across the test binaries.
namespace ptops::testsites {

// One object x, one idempotent e.
inline CatPtr idem_monoid() {
  RawCat raw;
  raw.objects = {"x"};
  raw.arrows = {{"e", "x", "x"}};
  raw.compose = {{"e", "e", "e"}};
  return make_fincat(raw);
}

// Total order 0 < m < 1.
inline CatPtr chain3() {
  RawCat raw;
  raw.objects = {"0", "m", "1"};
  raw.arrows = {{"f0m", "0", "m"}, {"fm1", "m", "1"}, {"f01", "0", "1"}};
  raw.compose = {{"fm1", "f0m", "f01"}};
  return make_fincat(raw);
}

// Two objects, identities only.
inline CatPtr discrete2() {
  RawCat raw;
  raw.objects = {"u", "v"};
  return make_fincat(raw);
}

// Objects V, E; d0,d1 : V -> E; s : E -> V; s∘d0 = s∘d1 = id_V.
inline CatPtr reflexive_graph() {
  RawCat raw;
  raw.objects = {"V", "E"};
  raw.arrows = {{"d0", "V", "E"}, {"d1", "V", "E"}, {"s", "E", "V"},
                {"e0", "E", "E"}, {"e1", "E", "E"}};
  raw.compose = {{"s", "d0", "id_V"}, {"s", "d1", "id_V"}, {"d0", "s", "e0"},
                 {"d1", "s", "e1"},  {"e0", "d0", "d0"},  {"e0", "d1", "d0"},
                 {"e1", "d0", "d1"}, {"e1", "d1", "d1"},  {"s", "e0", "s"},
                 {"s", "e1", "s"},   {"e0", "e0", "e0"},  {"e0", "e1", "e0"},
                 {"e1", "e0", "e1"}, {"e1", "e1", "e1"}};
  return make_fincat(raw);
}

inline CatPtr terminal_site() {
  RawCat raw;
  raw.objects = {"pt"};
  return make_fincat(raw);
}

}  // namespace ptops::testsites
