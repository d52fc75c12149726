#pragma once

// Example models used across unit and acceptance tests. Variable Xk has
// node id k-1.

#include <string>

#include "ldag/io.hpp"
#include "ldag/partition.hpp"

namespace ldag::testing {

inline Ldag model_from_text(const std::string& text) { return parse_model(text).model; }

// Spy/visitor/worker: h in {worker, spy, visitor}, gender g, badge b.
inline Ldag spy_dag() {
  return model_from_text(R"(ldag v1
var h 3
var g 2
var b 2
edge h g
edge h b
edge g b
)");
}

inline Ldag spy_ldag() {
  return model_from_text(R"(ldag v1
var h 3
var g 2
var b 2
edge h g
edge h b
edge g b
label g b : (1) (2)
)");
}

inline const char* kFourNodeHeader = R"(ldag v1
var X1 2
var X2 2
var X3 2
var X4 2
edge X2 X1
edge X3 X1
edge X4 X1
)";

// L(2,1) = {(0,1)}, L(4,1) = X2 x {1}.
inline Ldag two_label_model() { return model_from_text(std::string(kFourNodeHeader) + "label X2 X1 : (0,1)\nlabel X4 X1 : (*,1)\n"); }

// L(2,1) = {(1,0)}, L(4,1) = {(0,1)}: one class of size 3.
inline Ldag merged_class_model() { return model_from_text(std::string(kFourNodeHeader) + "label X2 X1 : (1,0)\nlabel X4 X1 : (0,1)\n"); }

// The two-label model with (1,0) added to L(2,1); (1,1) is then implied.
inline Ldag non_maximal_model() {
  return model_from_text(std::string(kFourNodeHeader) + "label X2 X1 : (0,1) (1,0)\nlabel X4 X1 : (*,1)\n");
}

// Regular but not maximal: closing L(4,1) makes it full.
inline Ldag regularity_example() {
  return model_from_text(std::string(kFourNodeHeader) + "label X3 X1 : (1,*)\nlabel X4 X1 : (0,0) (0,1) (1,0)\n");
}

// A CSI-equivalent pair whose underlying DAGs are not Markov equivalent.
inline Ldag csi_pair_first() {
  return model_from_text(R"(ldag v1
var X1 2
var X2 2
var X3 2
var X4 2
edge X2 X1
edge X3 X1
edge X4 X1
edge X3 X4
label X2 X1 : (0,*)
label X4 X1 : (*,1)
)");
}

inline Ldag csi_pair_second() {
  return model_from_text(R"(ldag v1
var X1 2
var X2 2
var X3 2
var X4 2
edge X2 X1
edge X3 X1
edge X1 X4
edge X3 X4
label X2 X1 : (0)
label X1 X4 : (1)
)");
}

// Ten binary variables, twenty edges, labels on five children.
inline Ldag synthetic_generator() {
  const Ldag raw = model_from_text(R"(ldag v1
var X1 2
var X2 2
var X3 2
var X4 2
var X5 2
var X6 2
var X7 2
var X8 2
var X9 2
var X10 2
edge X1 X2
edge X1 X3
edge X2 X3
edge X1 X4
edge X3 X4
edge X1 X5
edge X4 X5
edge X8 X5
edge X2 X6
edge X6 X8
edge X2 X7
edge X3 X7
edge X4 X7
edge X6 X7
edge X5 X9
edge X6 X9
edge X2 X10
edge X7 X10
edge X8 X10
edge X9 X10
label X2 X3 : (0)
label X1 X4 : (1)
label X4 X5 : (0,*)
label X8 X5 : (0,*)
label X2 X7 : (1,1,0)
label X3 X7 : (0,1,1) (1,*,1)
label X4 X7 : (1,1,*)
label X6 X7 : (1,1,*)
label X5 X9 : (1)
label X7 X10 : (1,*,*)
label X8 X10 : (1,*,*)
label X9 X10 : (1,*,*)
)");
  return regularize(make_maximal(raw));
}

}  // namespace ldag::testing
