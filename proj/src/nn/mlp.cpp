#include "ooo/nn/mlp.hpp"

namespace ooo {

MlpNet::MlpNet(int in_dim, const std::vector<int>& hidden, int out_dim,
               Activation act)
    : act_(act), in_dim_(in_dim), out_dim_(out_dim) {
  require(in_dim > 0 && out_dim > 0, "MlpNet: dims must be positive");
  int prev = in_dim;
  for (int h : hidden) {
    require(h > 0, "MlpNet: hidden width must be positive");
    layers_.push_back({Mat::Zero(h, prev), Vec::Zero(h), Mat::Zero(h, prev),
                       Vec::Zero(h)});
    prev = h;
  }
  layers_.push_back({Mat::Zero(out_dim, prev), Vec::Zero(out_dim),
                     Mat::Zero(out_dim, prev), Vec::Zero(out_dim)});
}

void MlpNet::init(Rng& rng) {
  for (auto& l : layers_) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(l.w.cols()));
    std::uniform_real_distribution<double> dist(-bound, bound);
    for (int c = 0; c < l.w.cols(); ++c)
      for (int r = 0; r < l.w.rows(); ++r) l.w(r, c) = dist(rng);
    for (int r = 0; r < l.b.size(); ++r) l.b(r) = dist(rng);
  }
}

void MlpNet::fill_zero() {
  for (auto& l : layers_) {
    l.w.setZero();
    l.b.setZero();
  }
}

Mat MlpNet::activate(const Mat& z) const {
  if (act_ == Activation::Relu) return z.cwiseMax(0.0);
  return z.array().tanh().matrix();
}

Mat MlpNet::activate_grad(const Mat& z) const {
  if (act_ == Activation::Relu)
    return (z.array() > 0.0).cast<double>().matrix();
  return (1.0 - z.array().tanh().square()).matrix();
}

Mat MlpNet::forward(const Mat& x) {
  require(x.cols() == in_dim_, "MlpNet::forward: input dim mismatch");
  input_ = x;
  pre_.clear();
  Mat h = x;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    Mat z = (h * layers_[i].w.transpose()).rowwise() +
            layers_[i].b.transpose();
    pre_.push_back(z);
    h = (i + 1 == layers_.size()) ? z : activate(z);
  }
  return h;
}

Mat MlpNet::forward_const(const Mat& x) const {
  require(x.cols() == in_dim_, "MlpNet::forward_const: input dim mismatch");
  Mat h = x;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    Mat z = (h * layers_[i].w.transpose()).rowwise() +
            layers_[i].b.transpose();
    h = (i + 1 == layers_.size()) ? z : activate(z);
  }
  return h;
}

Mat MlpNet::backward(const Mat& dout) {
  require(pre_.size() == layers_.size(),
          "MlpNet::backward: no cached forward pass");
  require(dout.rows() == input_.rows() && dout.cols() == out_dim_,
          "MlpNet::backward: dout shape mismatch");
  Mat dh = dout;
  for (int i = static_cast<int>(layers_.size()) - 1; i >= 0; --i) {
    // output layer is linear; hidden layers apply the activation
    Mat dz = (i + 1 == static_cast<int>(layers_.size()))
                 ? dh
                 : dh.cwiseProduct(activate_grad(pre_[i])).eval();
    const Mat h_in =
        (i == 0) ? input_ : activate(pre_[static_cast<std::size_t>(i) - 1]);
    layers_[i].dw.noalias() += dz.transpose() * h_in;
    layers_[i].db.noalias() += dz.colwise().sum().transpose();
    dh = dz * layers_[i].w;
  }
  return dh;
}

void MlpNet::zero_grad() {
  for (auto& l : layers_) {
    l.dw.setZero();
    l.db.setZero();
  }
}

std::vector<ParamView> MlpNet::params(const std::string& prefix) {
  std::vector<ParamView> out;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    auto& l = layers_[i];
    const std::string base = prefix + "layer" + std::to_string(i);
    out.push_back({base + ".w", l.w.data(), static_cast<int>(l.w.rows()),
                   static_cast<int>(l.w.cols())});
    out.push_back(
        {base + ".b", l.b.data(), static_cast<int>(l.b.size()), 1});
  }
  return out;
}

std::vector<ConstParamView> MlpNet::params(const std::string& prefix) const {
  std::vector<ConstParamView> out;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const auto& l = layers_[i];
    const std::string base = prefix + "layer" + std::to_string(i);
    out.push_back({base + ".w", l.w.data(), static_cast<int>(l.w.rows()),
                   static_cast<int>(l.w.cols())});
    out.push_back(
        {base + ".b", l.b.data(), static_cast<int>(l.b.size()), 1});
  }
  return out;
}

std::vector<ParamView> MlpNet::grads() {
  std::vector<ParamView> out;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    auto& l = layers_[i];
    const std::string base = "layer" + std::to_string(i);
    out.push_back({base + ".dw", l.dw.data(), static_cast<int>(l.dw.rows()),
                   static_cast<int>(l.dw.cols())});
    out.push_back(
        {base + ".db", l.db.data(), static_cast<int>(l.db.size()), 1});
  }
  return out;
}

bool MlpNet::all_finite() const {
  for (const auto& l : layers_)
    if (!l.w.allFinite() || !l.b.allFinite()) return false;
  return true;
}

}  // namespace ooo
