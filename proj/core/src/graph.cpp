#include "auxsumm/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace auxsumm {

namespace {

[[noreturn]] void shape_error(const char* opname, const Tensor& a, const Tensor& b) {
  throw std::invalid_argument(std::string(opname) + ": shape mismatch " + a.shape_str() +
                              " vs " + b.shape_str());
}

[[noreturn]] void shape_error(const char* opname, const Tensor& a, const std::string& what) {
  throw std::invalid_argument(std::string(opname) + ": " + what + ", got " + a.shape_str());
}

}  // namespace

Graph::Node& Graph::at(Var v) { return nodes_[static_cast<std::size_t>(v.id)]; }
const Graph::Node& Graph::at(Var v) const { return nodes_[static_cast<std::size_t>(v.id)]; }

const Tensor& Graph::value(Var v) const { return at(v).value; }
const Tensor& Graph::grad(Var v) const { return at(v).grad; }

Var Graph::push(Node n, const char* opname) {
  if (!n.value.all_finite()) {
    throw std::domain_error(std::string(opname) + ": non-finite output");
  }
  nodes_.push_back(std::move(n));
  return Var{static_cast<int>(nodes_.size()) - 1};
}

void Graph::check_rank(Var v, int rank, const char* opname) const {
  if (at(v).value.ndim() != rank) {
    shape_error(opname, at(v).value, "expected rank-" + std::to_string(rank) + " operand");
  }
}

Var Graph::input(Tensor value) {
  Node n;
  n.op = Op::kInput;
  n.value = std::move(value);
  return push(std::move(n), "input");
}

Var Graph::param(Tensor* bound_value, Tensor* bound_grad) {
  Node n;
  n.op = Op::kParam;
  n.value = *bound_value;
  n.bound_grad = bound_grad;
  return push(std::move(n), "param");
}

Var Graph::matmul(Var a, Var b) {
  const Tensor& ta = at(a).value;
  const Tensor& tb = at(b).value;
  if (ta.ndim() != 2) shape_error("matmul", ta, "expected rank-2 lhs");
  Node n;
  n.op = Op::kMatMul;
  n.inputs = {a.id, b.id};
  if (tb.ndim() == 2) {
    if (ta.cols() != tb.rows()) shape_error("matmul", ta, tb);
    const int m = ta.rows(), k = ta.cols(), c = tb.cols();
    n.value = Tensor({m, c});
    for (int i = 0; i < m; ++i) {
      for (int p = 0; p < k; ++p) {
        const double aip = ta.at(i, p);
        if (aip == 0.0) continue;
        for (int j = 0; j < c; ++j) n.value.at(i, j) += aip * tb.at(p, j);
      }
    }
  } else if (tb.ndim() == 1) {
    if (ta.cols() != tb.dim(0)) shape_error("matmul", ta, tb);
    const int m = ta.rows(), k = ta.cols();
    n.value = Tensor({m});
    for (int i = 0; i < m; ++i) {
      double acc = 0.0;
      for (int p = 0; p < k; ++p) acc += ta.at(i, p) * tb.at(p);
      n.value.at(i) = acc;
    }
  } else {
    shape_error("matmul", tb, "expected rank-1 or rank-2 rhs");
  }
  return push(std::move(n), "matmul");
}

Var Graph::affine(Var w, Var x, Var b) { return add(matmul(w, x), b); }

Var Graph::add(Var a, Var b) {
  const Tensor& ta = at(a).value;
  const Tensor& tb = at(b).value;
  if (!ta.same_shape(tb)) shape_error("add", ta, tb);
  Node n;
  n.op = Op::kAdd;
  n.inputs = {a.id, b.id};
  n.value = ta;
  for (std::size_t i = 0; i < tb.numel(); ++i) n.value.data[i] += tb.data[i];
  return push(std::move(n), "add");
}

Var Graph::add_rowvec(Var m, Var v) {
  const Tensor& tm = at(m).value;
  const Tensor& tv = at(v).value;
  if (tm.ndim() != 2 || tv.ndim() != 1 || tm.cols() != tv.dim(0)) {
    shape_error("add_rowvec", tm, tv);
  }
  Node n;
  n.op = Op::kAddRowVec;
  n.inputs = {m.id, v.id};
  n.value = tm;
  for (int i = 0; i < tm.rows(); ++i) {
    for (int j = 0; j < tm.cols(); ++j) n.value.at(i, j) += tv.at(j);
  }
  return push(std::move(n), "add_rowvec");
}

Var Graph::mul(Var a, Var b) {
  const Tensor& ta = at(a).value;
  const Tensor& tb = at(b).value;
  if (!ta.same_shape(tb)) shape_error("mul", ta, tb);
  Node n;
  n.op = Op::kMul;
  n.inputs = {a.id, b.id};
  n.value = ta;
  for (std::size_t i = 0; i < tb.numel(); ++i) n.value.data[i] *= tb.data[i];
  return push(std::move(n), "mul");
}

Var Graph::concat(Var a, Var b) {
  check_rank(a, 1, "concat");
  check_rank(b, 1, "concat");
  const Tensor& ta = at(a).value;
  const Tensor& tb = at(b).value;
  Node n;
  n.op = Op::kConcat;
  n.inputs = {a.id, b.id};
  n.value = Tensor({ta.dim(0) + tb.dim(0)});
  std::copy(ta.data.begin(), ta.data.end(), n.value.data.begin());
  std::copy(tb.data.begin(), tb.data.end(), n.value.data.begin() + ta.dim(0));
  return push(std::move(n), "concat");
}

Var Graph::slice(Var x, int begin, int len) {
  check_rank(x, 1, "slice");
  const Tensor& tx = at(x).value;
  if (begin < 0 || len < 0 || begin + len > tx.dim(0)) {
    shape_error("slice", tx, "range [" + std::to_string(begin) + ", " +
                                 std::to_string(begin + len) + ") out of bounds");
  }
  Node n;
  n.op = Op::kSlice;
  n.inputs = {x.id};
  n.iaux = {begin, len};
  n.value = Tensor({len});
  std::copy(tx.data.begin() + begin, tx.data.begin() + begin + len, n.value.data.begin());
  return push(std::move(n), "slice");
}

Var Graph::slice_row(Var m, int row) {
  check_rank(m, 2, "slice_row");
  const Tensor& tm = at(m).value;
  if (row < 0 || row >= tm.rows()) {
    shape_error("slice_row", tm, "row " + std::to_string(row) + " out of bounds");
  }
  Node n;
  n.op = Op::kSliceRow;
  n.inputs = {m.id};
  n.iaux = {row};
  n.value = Tensor({tm.cols()});
  for (int j = 0; j < tm.cols(); ++j) n.value.at(j) = tm.at(row, j);
  return push(std::move(n), "slice_row");
}

Var Graph::stack_rows(const std::vector<Var>& rows) {
  if (rows.empty()) throw std::invalid_argument("stack_rows: empty row list");
  check_rank(rows[0], 1, "stack_rows");
  const int d = at(rows[0]).value.dim(0);
  Node n;
  n.op = Op::kStackRows;
  n.value = Tensor({static_cast<int>(rows.size()), d});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    check_rank(rows[i], 1, "stack_rows");
    const Tensor& r = at(rows[i]).value;
    if (r.dim(0) != d) shape_error("stack_rows", at(rows[0]).value, r);
    n.inputs.push_back(rows[i].id);
    std::copy(r.data.begin(), r.data.end(),
              n.value.data.begin() + static_cast<std::ptrdiff_t>(i) * d);
  }
  return push(std::move(n), "stack_rows");
}

Var Graph::tanh(Var x) {
  Node n;
  n.op = Op::kTanh;
  n.inputs = {x.id};
  n.value = at(x).value;
  for (double& v : n.value.data) v = std::tanh(v);
  return push(std::move(n), "tanh");
}

Var Graph::sigmoid(Var x) {
  Node n;
  n.op = Op::kSigmoid;
  n.inputs = {x.id};
  n.value = at(x).value;
  for (double& v : n.value.data) v = 1.0 / (1.0 + std::exp(-v));
  return push(std::move(n), "sigmoid");
}

Var Graph::softmax(Var x) {
  check_rank(x, 1, "softmax");
  Node n;
  n.op = Op::kSoftmax;
  n.inputs = {x.id};
  n.value = at(x).value;
  double mx = n.value.data[0];
  for (double v : n.value.data) mx = std::max(mx, v);
  double total = 0.0;
  for (double& v : n.value.data) {
    v = std::exp(v - mx);
    total += v;
  }
  for (double& v : n.value.data) v /= total;
  return push(std::move(n), "softmax");
}

Var Graph::log(Var x, double floor) {
  Node n;
  n.op = Op::kLog;
  n.inputs = {x.id};
  n.daux0 = floor;
  n.value = at(x).value;
  for (double& v : n.value.data) v = std::log(std::max(v, floor));
  return push(std::move(n), "log");
}

Var Graph::elementwise_min(Var a, Var b) {
  const Tensor& ta = at(a).value;
  const Tensor& tb = at(b).value;
  if (!ta.same_shape(tb)) shape_error("elementwise_min", ta, tb);
  Node n;
  n.op = Op::kMin;
  n.inputs = {a.id, b.id};
  n.value = ta;
  for (std::size_t i = 0; i < tb.numel(); ++i) n.value.data[i] = std::min(ta.data[i], tb.data[i]);
  return push(std::move(n), "elementwise_min");
}

Var Graph::weighted_sum(Var weights, Var rows) {
  check_rank(weights, 1, "weighted_sum");
  check_rank(rows, 2, "weighted_sum");
  const Tensor& tw = at(weights).value;
  const Tensor& tr = at(rows).value;
  if (tw.dim(0) != tr.rows()) shape_error("weighted_sum", tw, tr);
  Node n;
  n.op = Op::kWeightedSum;
  n.inputs = {weights.id, rows.id};
  n.value = Tensor({tr.cols()});
  for (int k = 0; k < tr.rows(); ++k) {
    const double w = tw.at(k);
    for (int j = 0; j < tr.cols(); ++j) n.value.at(j) += w * tr.at(k, j);
  }
  return push(std::move(n), "weighted_sum");
}

Var Graph::embed_lookup(Var table, const std::vector<int>& ids) {
  check_rank(table, 2, "embed_lookup");
  const Tensor& tt = at(table).value;
  Node n;
  n.op = Op::kEmbedLookup;
  n.inputs = {table.id};
  n.value = Tensor({static_cast<int>(ids.size()), tt.cols()});
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const int id = ids[i];
    if (id < 0 || id >= tt.rows()) {
      throw std::invalid_argument("embed_lookup: id " + std::to_string(id) +
                                  " out of range for table " + tt.shape_str());
    }
    n.iaux.push_back(id);
    for (int j = 0; j < tt.cols(); ++j) n.value.at(static_cast<int>(i), j) = tt.at(id, j);
  }
  return push(std::move(n), "embed_lookup");
}

Var Graph::outer(Var a, Var b) {
  check_rank(a, 1, "outer");
  check_rank(b, 1, "outer");
  const Tensor& ta = at(a).value;
  const Tensor& tb = at(b).value;
  Node n;
  n.op = Op::kOuter;
  n.inputs = {a.id, b.id};
  n.value = Tensor({ta.dim(0), tb.dim(0)});
  for (int i = 0; i < ta.dim(0); ++i) {
    for (int j = 0; j < tb.dim(0); ++j) n.value.at(i, j) = ta.at(i) * tb.at(j);
  }
  return push(std::move(n), "outer");
}

Var Graph::scatter_add(Var values, const std::vector<int>& ids, int size) {
  check_rank(values, 1, "scatter_add");
  const Tensor& tv = at(values).value;
  if (static_cast<std::size_t>(tv.dim(0)) != ids.size()) {
    shape_error("scatter_add", tv, "expected " + std::to_string(ids.size()) + " values");
  }
  Node n;
  n.op = Op::kScatterAdd;
  n.inputs = {values.id};
  n.iaux = ids;
  n.value = Tensor({size});
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] < 0 || ids[i] >= size) {
      throw std::invalid_argument("scatter_add: id " + std::to_string(ids[i]) +
                                  " out of range [0, " + std::to_string(size) + ")");
    }
    n.value.at(ids[i]) += tv.at(static_cast<int>(i));
  }
  return push(std::move(n), "scatter_add");
}

Var Graph::smul(Var scalar, Var x) {
  const Tensor& ts = at(scalar).value;
  if (ts.numel() != 1) shape_error("smul", ts, "expected scalar lhs");
  Node n;
  n.op = Op::kSMul;
  n.inputs = {scalar.id, x.id};
  n.value = at(x).value;
  for (double& v : n.value.data) v *= ts.data[0];
  return push(std::move(n), "smul");
}

Var Graph::scalar_mix(double alpha, Var a, double beta, Var b) {
  const Tensor& ta = at(a).value;
  const Tensor& tb = at(b).value;
  if (!ta.same_shape(tb)) shape_error("scalar_mix", ta, tb);
  Node n;
  n.op = Op::kScalarMix;
  n.inputs = {a.id, b.id};
  n.daux0 = alpha;
  n.daux1 = beta;
  n.value = ta;
  for (std::size_t i = 0; i < ta.numel(); ++i) {
    n.value.data[i] = alpha * ta.data[i] + beta * tb.data[i];
  }
  return push(std::move(n), "scalar_mix");
}

Var Graph::scale(double c, Var x) {
  Node n;
  n.op = Op::kScale;
  n.inputs = {x.id};
  n.daux0 = c;
  n.value = at(x).value;
  for (double& v : n.value.data) v *= c;
  return push(std::move(n), "scale");
}

Var Graph::sum(Var x) {
  Node n;
  n.op = Op::kSum;
  n.inputs = {x.id};
  double acc = 0.0;
  for (double v : at(x).value.data) acc += v;
  n.value = Tensor::scalar(acc);
  return push(std::move(n), "sum");
}

Var Graph::pick(Var x, int index) {
  check_rank(x, 1, "pick");
  const Tensor& tx = at(x).value;
  if (index < 0 || index >= tx.dim(0)) {
    throw std::invalid_argument("pick: index " + std::to_string(index) +
                                " out of range for " + tx.shape_str());
  }
  Node n;
  n.op = Op::kPick;
  n.inputs = {x.id};
  n.iaux = {index};
  n.value = Tensor::scalar(tx.at(index));
  return push(std::move(n), "pick");
}

void Graph::backward(Var loss) {
  if (!loss.valid() || static_cast<std::size_t>(loss.id) >= nodes_.size()) {
    throw std::invalid_argument("backward: invalid loss node");
  }
  if (at(loss).value.numel() != 1) {
    throw std::invalid_argument("backward: loss must be scalar, got " +
                                at(loss).value.shape_str());
  }
  for (Node& n : nodes_) {
    n.grad = Tensor(n.value.shape);
  }
  at(loss).grad.data[0] = 1.0;

  for (int id = loss.id; id >= 0; --id) {
    Node& n = nodes_[static_cast<std::size_t>(id)];
    const Tensor& g = n.grad;
    switch (n.op) {
      case Op::kInput:
        break;
      case Op::kParam:
        if (n.bound_grad != nullptr) {
          for (std::size_t i = 0; i < g.numel(); ++i) n.bound_grad->data[i] += g.data[i];
        }
        break;
      case Op::kMatMul: {
        Node& a = nodes_[static_cast<std::size_t>(n.inputs[0])];
        Node& b = nodes_[static_cast<std::size_t>(n.inputs[1])];
        if (b.value.ndim() == 2) {
          const int m = a.value.rows(), k = a.value.cols(), c = b.value.cols();
          for (int i = 0; i < m; ++i) {
            for (int p = 0; p < k; ++p) {
              double acc = 0.0;
              for (int j = 0; j < c; ++j) acc += g.at(i, j) * b.value.at(p, j);
              a.grad.at(i, p) += acc;
            }
          }
          for (int p = 0; p < k; ++p) {
            for (int j = 0; j < c; ++j) {
              double acc = 0.0;
              for (int i = 0; i < m; ++i) acc += a.value.at(i, p) * g.at(i, j);
              b.grad.at(p, j) += acc;
            }
          }
        } else {
          const int m = a.value.rows(), k = a.value.cols();
          for (int i = 0; i < m; ++i) {
            const double gi = g.at(i);
            for (int p = 0; p < k; ++p) {
              a.grad.at(i, p) += gi * b.value.at(p);
              b.grad.at(p) += gi * a.value.at(i, p);
            }
          }
        }
        break;
      }
      case Op::kAdd: {
        Node& a = nodes_[static_cast<std::size_t>(n.inputs[0])];
        Node& b = nodes_[static_cast<std::size_t>(n.inputs[1])];
        for (std::size_t i = 0; i < g.numel(); ++i) {
          a.grad.data[i] += g.data[i];
          b.grad.data[i] += g.data[i];
        }
        break;
      }
      case Op::kAddRowVec: {
        Node& m = nodes_[static_cast<std::size_t>(n.inputs[0])];
        Node& v = nodes_[static_cast<std::size_t>(n.inputs[1])];
        for (std::size_t i = 0; i < g.numel(); ++i) m.grad.data[i] += g.data[i];
        for (int i = 0; i < n.value.rows(); ++i) {
          for (int j = 0; j < n.value.cols(); ++j) v.grad.at(j) += g.at(i, j);
        }
        break;
      }
      case Op::kMul: {
        Node& a = nodes_[static_cast<std::size_t>(n.inputs[0])];
        Node& b = nodes_[static_cast<std::size_t>(n.inputs[1])];
        for (std::size_t i = 0; i < g.numel(); ++i) {
          a.grad.data[i] += g.data[i] * b.value.data[i];
          b.grad.data[i] += g.data[i] * a.value.data[i];
        }
        break;
      }
      case Op::kConcat: {
        Node& a = nodes_[static_cast<std::size_t>(n.inputs[0])];
        Node& b = nodes_[static_cast<std::size_t>(n.inputs[1])];
        const std::size_t na = a.value.numel();
        for (std::size_t i = 0; i < na; ++i) a.grad.data[i] += g.data[i];
        for (std::size_t i = 0; i < b.value.numel(); ++i) b.grad.data[i] += g.data[na + i];
        break;
      }
      case Op::kSlice: {
        Node& x = nodes_[static_cast<std::size_t>(n.inputs[0])];
        const int begin = n.iaux[0], len = n.iaux[1];
        for (int i = 0; i < len; ++i) x.grad.at(begin + i) += g.at(i);
        break;
      }
      case Op::kSliceRow: {
        Node& m = nodes_[static_cast<std::size_t>(n.inputs[0])];
        const int row = n.iaux[0];
        for (int j = 0; j < m.value.cols(); ++j) m.grad.at(row, j) += g.at(j);
        break;
      }
      case Op::kStackRows: {
        const int d = n.value.cols();
        for (std::size_t r = 0; r < n.inputs.size(); ++r) {
          Node& row = nodes_[static_cast<std::size_t>(n.inputs[r])];
          for (int j = 0; j < d; ++j) row.grad.at(j) += g.at(static_cast<int>(r), j);
        }
        break;
      }
      case Op::kTanh: {
        Node& x = nodes_[static_cast<std::size_t>(n.inputs[0])];
        for (std::size_t i = 0; i < g.numel(); ++i) {
          const double y = n.value.data[i];
          x.grad.data[i] += g.data[i] * (1.0 - y * y);
        }
        break;
      }
      case Op::kSigmoid: {
        Node& x = nodes_[static_cast<std::size_t>(n.inputs[0])];
        for (std::size_t i = 0; i < g.numel(); ++i) {
          const double y = n.value.data[i];
          x.grad.data[i] += g.data[i] * y * (1.0 - y);
        }
        break;
      }
      case Op::kSoftmax: {
        Node& x = nodes_[static_cast<std::size_t>(n.inputs[0])];
        double dot = 0.0;
        for (std::size_t i = 0; i < g.numel(); ++i) dot += g.data[i] * n.value.data[i];
        for (std::size_t i = 0; i < g.numel(); ++i) {
          x.grad.data[i] += n.value.data[i] * (g.data[i] - dot);
        }
        break;
      }
      case Op::kLog: {
        Node& x = nodes_[static_cast<std::size_t>(n.inputs[0])];
        for (std::size_t i = 0; i < g.numel(); ++i) {
          const double xv = x.value.data[i];
          if (xv >= n.daux0) x.grad.data[i] += g.data[i] / xv;
        }
        break;
      }
      case Op::kMin: {
        Node& a = nodes_[static_cast<std::size_t>(n.inputs[0])];
        Node& b = nodes_[static_cast<std::size_t>(n.inputs[1])];
        for (std::size_t i = 0; i < g.numel(); ++i) {
          if (a.value.data[i] <= b.value.data[i]) {
            a.grad.data[i] += g.data[i];
          } else {
            b.grad.data[i] += g.data[i];
          }
        }
        break;
      }
      case Op::kWeightedSum: {
        Node& w = nodes_[static_cast<std::size_t>(n.inputs[0])];
        Node& r = nodes_[static_cast<std::size_t>(n.inputs[1])];
        for (int k = 0; k < r.value.rows(); ++k) {
          double acc = 0.0;
          for (int j = 0; j < r.value.cols(); ++j) {
            acc += g.at(j) * r.value.at(k, j);
            r.grad.at(k, j) += w.value.at(k) * g.at(j);
          }
          w.grad.at(k) += acc;
        }
        break;
      }
      case Op::kEmbedLookup: {
        Node& t = nodes_[static_cast<std::size_t>(n.inputs[0])];
        for (std::size_t i = 0; i < n.iaux.size(); ++i) {
          const int id = n.iaux[i];
          for (int j = 0; j < t.value.cols(); ++j) {
            t.grad.at(id, j) += g.at(static_cast<int>(i), j);
          }
        }
        break;
      }
      case Op::kOuter: {
        Node& a = nodes_[static_cast<std::size_t>(n.inputs[0])];
        Node& b = nodes_[static_cast<std::size_t>(n.inputs[1])];
        for (int i = 0; i < a.value.dim(0); ++i) {
          for (int j = 0; j < b.value.dim(0); ++j) {
            a.grad.at(i) += g.at(i, j) * b.value.at(j);
            b.grad.at(j) += g.at(i, j) * a.value.at(i);
          }
        }
        break;
      }
      case Op::kScatterAdd: {
        Node& v = nodes_[static_cast<std::size_t>(n.inputs[0])];
        for (std::size_t i = 0; i < n.iaux.size(); ++i) {
          v.grad.at(static_cast<int>(i)) += g.at(n.iaux[i]);
        }
        break;
      }
      case Op::kSMul: {
        Node& s = nodes_[static_cast<std::size_t>(n.inputs[0])];
        Node& x = nodes_[static_cast<std::size_t>(n.inputs[1])];
        double acc = 0.0;
        for (std::size_t i = 0; i < g.numel(); ++i) {
          acc += g.data[i] * x.value.data[i];
          x.grad.data[i] += g.data[i] * s.value.data[0];
        }
        s.grad.data[0] += acc;
        break;
      }
      case Op::kScalarMix: {
        Node& a = nodes_[static_cast<std::size_t>(n.inputs[0])];
        Node& b = nodes_[static_cast<std::size_t>(n.inputs[1])];
        for (std::size_t i = 0; i < g.numel(); ++i) {
          a.grad.data[i] += n.daux0 * g.data[i];
          b.grad.data[i] += n.daux1 * g.data[i];
        }
        break;
      }
      case Op::kScale: {
        Node& x = nodes_[static_cast<std::size_t>(n.inputs[0])];
        for (std::size_t i = 0; i < g.numel(); ++i) x.grad.data[i] += n.daux0 * g.data[i];
        break;
      }
      case Op::kSum: {
        Node& x = nodes_[static_cast<std::size_t>(n.inputs[0])];
        for (std::size_t i = 0; i < x.value.numel(); ++i) x.grad.data[i] += g.data[0];
        break;
      }
      case Op::kPick: {
        Node& x = nodes_[static_cast<std::size_t>(n.inputs[0])];
        x.grad.at(n.iaux[0]) += g.data[0];
        break;
      }
    }
  }
}

}  // namespace auxsumm
