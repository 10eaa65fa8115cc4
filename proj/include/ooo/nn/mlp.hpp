#pragma once

#include <string>
#include <vector>

#include "ooo/common.hpp"

namespace ooo {

enum class Activation { Relu, Tanh };

// Named view over one parameter tensor's raw storage (column-major).
struct ParamView {
  std::string name;
  double* data = nullptr;
  int rows = 0;
  int cols = 0;
  int size() const { return rows * cols; }
};

struct ConstParamView {
  std::string name;
  const double* data = nullptr;
  int rows = 0;
  int cols = 0;
  int size() const { return rows * cols; }
};

// Fully-connected net with an activation on hidden layers and a linear
// output head. Batches are row-per-sample. forward() caches what
// backward() needs; forward_const() is the cache-free read-only path.
class MlpNet {
 public:
  MlpNet() = default;
  MlpNet(int in_dim, const std::vector<int>& hidden, int out_dim,
         Activation act = Activation::Relu);

  // Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) on weights and biases.
  void init(Rng& rng);
  void fill_zero();

  Mat forward(const Mat& x);
  Mat forward_const(const Mat& x) const;

  // dout is dL/d(output); accumulates parameter gradients and returns
  // dL/d(input). Requires a preceding forward() on the same batch.
  Mat backward(const Mat& dout);
  void zero_grad();

  int input_dim() const { return in_dim_; }
  int output_dim() const { return out_dim_; }
  int layer_count() const { return static_cast<int>(layers_.size()); }

  std::vector<ParamView> params(const std::string& prefix = "");
  std::vector<ConstParamView> params(const std::string& prefix = "") const;
  std::vector<ParamView> grads();

  bool all_finite() const;

 private:
  struct Layer {
    Mat w;  // out x in
    Vec b;
    Mat dw;
    Vec db;
  };

  Mat activate(const Mat& z) const;
  Mat activate_grad(const Mat& z) const;

  std::vector<Layer> layers_;
  Activation act_ = Activation::Relu;
  int in_dim_ = 0;
  int out_dim_ = 0;

  // backward cache
  Mat input_;
  std::vector<Mat> pre_;
};

}  // namespace ooo
