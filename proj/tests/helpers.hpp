#pragma once

#include <string>

#include "ssp/analysis.hpp"

namespace test_helpers {

inline ssp::NetDocument load(const std::string& name) {
  return ssp::parse_net_file(std::string(FIXTURE_DIR) + "/" + name);
}

// Builds a marked elementary circuit p1 -> t1 -> p2 -> ... -> pn -> tn -> p1.
inline ssp::NetDocument circuit(int n, long long tokens = 1) {
  ssp::NetDocument doc;
  doc.name = "circuit";
  for (int i = 1; i <= n; ++i) doc.net.add_place("p" + std::to_string(i));
  for (int i = 1; i <= n; ++i) doc.net.add_trans("t" + std::to_string(i));
  for (int i = 1; i <= n; ++i) {
    doc.net.add_arc("p" + std::to_string(i), "t" + std::to_string(i));
    doc.net.add_arc("t" + std::to_string(i),
                    "p" + std::to_string(i % n + 1));
  }
  doc.m0.assign(n, 0);
  doc.m0[0] = tokens;
  return doc;
}

// Subnet where no single transition re-enables a full semiflow replay but a
// pair does: two interleaved halves exchanging the tokens v and w.
inline ssp::Net pair_check_net() {
  ssp::Net net;
  for (const char* p : {"L", "R", "ml", "mr", "v", "w"}) net.add_place(p);
  for (const char* t : {"tl", "tr", "cl", "cr"}) net.add_trans(t);
  net.add_arc("L", "tl");
  net.add_arc("tl", "ml");
  net.add_arc("R", "tr");
  net.add_arc("tr", "mr");
  net.add_arc("ml", "cl");
  net.add_arc("w", "cl");
  net.add_arc("cl", "L");
  net.add_arc("cl", "v");
  net.add_arc("mr", "cr");
  net.add_arc("v", "cr");
  net.add_arc("cr", "R");
  net.add_arc("cr", "w");
  return net;
}

}  // namespace test_helpers
