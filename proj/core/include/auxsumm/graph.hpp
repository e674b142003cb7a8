#ifndef AUXSUMM_GRAPH_HPP
#define AUXSUMM_GRAPH_HPP

#include <string>
#include <vector>

#include "auxsumm/tensor.hpp"

namespace auxsumm {

/// Handle to a node in a Graph tape.
struct Var {
  int id = -1;
  bool valid() const { return id >= 0; }
};

/// Reverse-mode autodiff over a flat tape.
///
/// Every operation records its inputs and value at insertion time;
/// backward() walks the tape once in reverse insertion order, which is a
/// valid topological order by construction. Accumulation order is therefore
/// fixed and runs single-threaded, so identical graphs produce bitwise
/// identical gradients.
///
/// Values are validated at op boundaries: shape mismatches and non-finite
/// outputs throw, naming the op.
class Graph {
 public:
  /// Constant leaf. Gradient is tracked (readable via grad()) but not
  /// propagated anywhere else.
  Var input(Tensor value);

  /// Leaf bound to an external parameter. After backward(), the node's
  /// gradient is accumulated into *bound_grad (if non-null).
  Var param(Tensor* bound_value, Tensor* bound_grad);

  // -- primitives ----------------------------------------------------------
  Var matmul(Var a, Var b);                 // [m,k]x[k,n] -> [m,n]; [m,k]x[k] -> [m]
  Var affine(Var w, Var x, Var b);          // matmul(w, x) + b
  Var add(Var a, Var b);                    // same shape
  Var add_rowvec(Var m, Var v);             // [r,c] + [c] broadcast over rows
  Var mul(Var a, Var b);                    // hadamard, same shape
  Var concat(Var a, Var b);                 // rank-1 concatenation
  Var slice(Var x, int begin, int len);     // rank-1 contiguous range
  Var slice_row(Var m, int row);            // [r,c] -> [c]
  Var stack_rows(const std::vector<Var>& rows);  // n x [d] -> [n,d]
  Var tanh(Var x);
  Var sigmoid(Var x);
  Var softmax(Var x);                       // rank-1; row-max subtracted
  Var log(Var x, double floor = 0.0);       // log(max(x, floor)); floor 0 = plain log
  Var elementwise_min(Var a, Var b);        // ties route the gradient to a
  Var weighted_sum(Var weights, Var rows);  // [n] . [n,d] -> [d]
  Var embed_lookup(Var table, const std::vector<int>& ids);  // [v,e] -> [|ids|,e]
  Var outer(Var a, Var b);                  // [m],[n] -> [m,n]
  Var scatter_add(Var values, const std::vector<int>& ids, int size);  // [n] -> [size]
  Var smul(Var scalar, Var x);              // scalar node times tensor
  Var scalar_mix(double alpha, Var a, double beta, Var b);  // alpha*a + beta*b
  Var scale(double c, Var x);
  Var sum(Var x);                           // -> scalar
  Var pick(Var x, int index);               // rank-1 element -> scalar

  // -- access --------------------------------------------------------------
  const Tensor& value(Var v) const;
  const Tensor& grad(Var v) const;
  std::size_t size() const { return nodes_.size(); }

  /// Seeds d(loss)/d(loss) = 1 and accumulates gradients down the tape.
  /// `loss` must be scalar.
  void backward(Var loss);

 private:
  enum class Op {
    kInput,
    kParam,
    kMatMul,
    kAdd,
    kAddRowVec,
    kMul,
    kConcat,
    kSlice,
    kSliceRow,
    kStackRows,
    kTanh,
    kSigmoid,
    kSoftmax,
    kLog,
    kMin,
    kWeightedSum,
    kEmbedLookup,
    kOuter,
    kScatterAdd,
    kSMul,
    kScalarMix,
    kScale,
    kSum,
    kPick,
  };

  struct Node {
    Op op;
    Tensor value;
    Tensor grad;
    std::vector<int> inputs;
    std::vector<int> iaux;   // ids / slice bounds / pick index
    double daux0 = 0.0;      // scalar_mix alpha, scale c, log floor
    double daux1 = 0.0;      // scalar_mix beta
    Tensor* bound_grad = nullptr;
  };

  Var push(Node n, const char* opname);
  Node& at(Var v);
  const Node& at(Var v) const;
  void check_rank(Var v, int rank, const char* opname) const;

  std::vector<Node> nodes_;
};

}  // namespace auxsumm

#endif  // AUXSUMM_GRAPH_HPP
