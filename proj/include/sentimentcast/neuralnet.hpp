#pragma once

// Small fully connected feedforward regressor (e.g. 5-3-1) trained by
// full-batch gradient descent with momentum on mean squared error.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sentimentcast/csv.hpp"
#include "sentimentcast/dataset.hpp"
#include "sentimentcast/error.hpp"
#include "sentimentcast/matrix.hpp"
#include "sentimentcast/rng.hpp"

namespace sentimentcast {

enum class Activation { logistic, tanh };

constexpr std::string_view activation_name(Activation a) { return a == Activation::logistic ? "logistic" : "tanh"; }

inline Activation parse_activation(std::string_view s) {
  if (s == "logistic") return Activation::logistic;
  if (s == "tanh") return Activation::tanh;
  throw Error(ErrorKind::usage, "unknown activation '" + std::string(s) + "'");
}

struct NetworkSpec {
  std::vector<std::size_t> layer_sizes;  // input, hidden..., output (= 1)
  Activation hidden_activation = Activation::logistic;
  std::uint64_t seed = 0;

  void validate() const {
    if (layer_sizes.size() < 2) throw Error(ErrorKind::usage, "a network needs at least input and output layers");
    for (std::size_t s : layer_sizes) {
      if (s < 1) throw Error(ErrorKind::usage, "layer sizes must be at least 1");
    }
    if (layer_sizes.back() != 1) throw Error(ErrorKind::usage, "output layer must have exactly one unit");
  }
};

struct Layer {
  Matrix weights;  // [out x in]
  std::vector<double> bias;

  friend bool operator==(const Layer&, const Layer&) = default;
};

struct Mlp {
  std::vector<std::size_t> layer_sizes;
  Activation hidden_activation = Activation::logistic;
  std::vector<Layer> layers;

  std::size_t input_size() const { return layer_sizes.front(); }

  std::size_t parameter_count() const {
    std::size_t n = 0;
    for (const auto& l : layers) n += l.weights.data().size() + l.bias.size();
    return n;
  }

  friend bool operator==(const Mlp&, const Mlp&) = default;
};

/// Parameter-shaped container for gradients and momentum buffers.
using Gradients = std::vector<Layer>;

namespace detail {

inline double activate(Activation a, double z) { return a == Activation::logistic ? 1.0 / (1.0 + std::exp(-z)) : std::tanh(z); }

/// Derivative expressed through the activation value.
inline double activate_slope(Activation a, double y) { return a == Activation::logistic ? y * (1.0 - y) : 1.0 - y * y; }

inline Gradients zeros_like(const Mlp& m) {
  Gradients g;
  g.reserve(m.layers.size());
  for (const auto& l : m.layers) g.push_back({Matrix(l.weights.rows(), l.weights.cols()), std::vector<double>(l.bias.size())});
  return g;
}

}  // namespace detail

inline Mlp zero_network(const std::vector<std::size_t>& sizes, Activation act = Activation::logistic) {
  NetworkSpec{sizes, act, 0}.validate();
  Mlp m;
  m.layer_sizes = sizes;
  m.hidden_activation = act;
  for (std::size_t l = 1; l < sizes.size(); ++l) {
    m.layers.push_back({Matrix(sizes[l], sizes[l - 1]), std::vector<double>(sizes[l], 0.0)});
  }
  return m;
}

/// Uniform weights in +-sqrt(3 / fan_in) (unit-variance signal per layer),
/// zero biases. Same seed, same parameters.
inline Mlp init(const NetworkSpec& spec) {
  spec.validate();
  Mlp m = zero_network(spec.layer_sizes, spec.hidden_activation);
  std::mt19937_64 rng(spec.seed);
  for (auto& layer : m.layers) {
    const double limit = std::sqrt(3.0 / static_cast<double>(layer.weights.cols()));
    for (double& w : layer.weights.data()) w = (2.0 * unit_uniform(rng) - 1.0) * limit;
  }
  return m;
}

/// Activations of every layer from a forward pass; front() is the input.
struct ForwardCache {
  std::vector<std::vector<double>> activations;

  double output() const { return activations.back().front(); }
};

inline void forward(const Mlp& m, std::span<const double> x, ForwardCache& cache) {
  if (x.size() != m.input_size()) {
    throw Error(ErrorKind::dimension, "expected " + std::to_string(m.input_size()) + " inputs, got " +
                                          std::to_string(x.size()));
  }
  cache.activations.resize(m.layers.size() + 1);
  cache.activations[0].assign(x.begin(), x.end());
  for (std::size_t l = 0; l < m.layers.size(); ++l) {
    const auto& layer = m.layers[l];
    const auto& in = cache.activations[l];
    auto& out = cache.activations[l + 1];
    out.resize(layer.weights.rows());
    const bool hidden = l + 1 < m.layers.size();
    for (std::size_t j = 0; j < out.size(); ++j) {
      double z = layer.bias[j];
      const auto w = layer.weights.row(j);
      for (std::size_t i = 0; i < in.size(); ++i) z += w[i] * in[i];
      out[j] = hidden ? detail::activate(m.hidden_activation, z) : z;
    }
  }
}

inline double forward(const Mlp& m, std::span<const double> x) {
  ForwardCache cache;
  forward(m, x, cache);
  return cache.output();
}

/// Mean squared error of the network over a batch.
template <RowSource Rows, ValueSource Targets>
double mean_squared_error(const Mlp& m, const Rows& x, const Targets& t) {
  if (x.size() != t.size()) throw Error(ErrorKind::dimension, "feature and target counts differ");
  if (x.size() == 0) throw Error(ErrorKind::dimension, "empty batch");
  ForwardCache cache;
  double sum = 0.0;
  for (std::size_t r = 0; r < x.size(); ++r) {
    forward(m, x.row(r), cache);
    const double e = cache.output() - t[r];
    sum += e * e;
  }
  return sum / static_cast<double>(x.size());
}

struct GradientResult {
  Gradients grads;
  double loss = 0.0;  // mean squared error at the current parameters
};

/// Exact gradient of the batch mean squared error by backpropagation.
template <RowSource Rows, ValueSource Targets>
GradientResult gradient(const Mlp& m, const Rows& x, const Targets& t) {
  if (x.size() != t.size()) throw Error(ErrorKind::dimension, "feature and target counts differ");
  if (x.size() == 0) throw Error(ErrorKind::dimension, "empty batch");

  GradientResult out{detail::zeros_like(m), 0.0};
  const double scale = 1.0 / static_cast<double>(x.size());
  ForwardCache cache;
  std::vector<double> delta, prev_delta;

  for (std::size_t r = 0; r < x.size(); ++r) {
    forward(m, x.row(r), cache);
    const double err = cache.output() - t[r];
    out.loss += err * err;

    delta.assign(1, 2.0 * err * scale);
    for (std::size_t l = m.layers.size(); l-- > 0;) {
      const auto& layer = m.layers[l];
      auto& g = out.grads[l];
      const auto& in = cache.activations[l];
      for (std::size_t j = 0; j < delta.size(); ++j) {
        g.bias[j] += delta[j];
        auto gw = g.weights.row(j);
        for (std::size_t i = 0; i < in.size(); ++i) gw[i] += delta[j] * in[i];
      }
      if (l == 0) break;
      prev_delta.assign(in.size(), 0.0);
      for (std::size_t j = 0; j < delta.size(); ++j) {
        const auto w = layer.weights.row(j);
        for (std::size_t i = 0; i < in.size(); ++i) prev_delta[i] += w[i] * delta[j];
      }
      for (std::size_t i = 0; i < in.size(); ++i) prev_delta[i] *= detail::activate_slope(m.hidden_activation, in[i]);
      std::swap(delta, prev_delta);
    }
  }
  out.loss *= scale;
  return out;
}

struct TrainConfig {
  std::size_t max_epochs = 5000;
  double learning_rate = 0.05;
  double momentum = 0.9;
  double target_mse = 1e-4;  // on normalized targets
  std::size_t log_every = 0;  // 0: silent

  void validate() const {
    if (max_epochs < 1) throw Error(ErrorKind::usage, "max_epochs must be at least 1");
    if (!(learning_rate > 0.0)) throw Error(ErrorKind::usage, "learning_rate must be positive");
    if (!(momentum >= 0.0 && momentum < 1.0)) throw Error(ErrorKind::usage, "momentum must be in [0, 1)");
  }
};

struct TrainHistory {
  std::vector<double> mse;  // training MSE at the start of each epoch
};

struct TrainResult {
  Mlp model;
  TrainHistory history;
};

using EpochLogger = std::function<void(std::size_t epoch, double mse)>;

/// Full-batch gradient descent with classical momentum:
///   v <- momentum * v - rate * grad;  w <- w + v.
/// Stops after max_epochs or once the epoch MSE reaches target_mse.
template <RowSource Rows, ValueSource Targets>
TrainResult train(Mlp model, const Rows& x, const Targets& t, const TrainConfig& config,
                  const EpochLogger& logger = {}) {
  config.validate();
  TrainResult out;
  Gradients velocity = detail::zeros_like(model);
  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    auto [grads, loss] = gradient(model, x, t);
    if (!std::isfinite(loss)) {
      throw Error(ErrorKind::diverged, "training loss became non-finite at epoch " + std::to_string(epoch));
    }
    out.history.mse.push_back(loss);
    if (logger && config.log_every > 0 && (epoch % config.log_every == 0 || epoch == 1)) logger(epoch, loss);
    if (loss <= config.target_mse) break;

    for (std::size_t l = 0; l < model.layers.size(); ++l) {
      auto w = model.layers[l].weights.data();
      auto vw = velocity[l].weights.data();
      const auto gw = grads[l].weights.data();
      for (std::size_t k = 0; k < w.size(); ++k) {
        vw[k] = config.momentum * vw[k] - config.learning_rate * gw[k];
        w[k] += vw[k];
      }
      auto& b = model.layers[l].bias;
      auto& vb = velocity[l].bias;
      const auto& gb = grads[l].bias;
      for (std::size_t k = 0; k < b.size(); ++k) {
        vb[k] = config.momentum * vb[k] - config.learning_rate * gb[k];
        b[k] += vb[k];
      }
    }
  }
  out.model = std::move(model);
  return out;
}

/// Network output for each row, on the normalized scale.
template <RowSource Rows>
std::vector<double> predict_scaled(const Mlp& m, const Rows& x) {
  std::vector<double> out;
  out.reserve(x.size());
  ForwardCache cache;
  for (std::size_t r = 0; r < x.size(); ++r) {
    forward(m, x.row(r), cache);
    out.push_back(cache.output());
  }
  return out;
}

/// Prices for raw (unscaled) feature rows: scale with the fitted feature
/// scaler, run the network, map the output back through the target range.
template <RowSource Rows>
std::vector<double> predict(const Mlp& m, const MinMaxScaler& features, const ColumnRange& target, const Rows& raw) {
  std::vector<double> out;
  out.reserve(raw.size());
  ForwardCache cache;
  for (std::size_t r = 0; r < raw.size(); ++r) {
    const auto row = raw.row(r);
    if (row.size() != m.input_size()) {
      throw Error(ErrorKind::dimension, "feature row has " + std::to_string(row.size()) + " values, network expects " +
                                            std::to_string(m.input_size()));
    }
    const auto scaled = features.transform(row);
    forward(m, scaled, cache);
    out.push_back(target.unscale(cache.output()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Model file
//
//   sentimentcast-mlp v1 5-3-1 logistic
//   <w_1 ... w_in b>      one line per output unit of layer 1
//   ...                   then layer 2, and so on
//
// Numbers use the shortest decimal form that round-trips exactly.

inline std::string save_model(const Mlp& m) {
  std::string out = "sentimentcast-mlp v1 ";
  for (std::size_t i = 0; i < m.layer_sizes.size(); ++i) {
    if (i) out += '-';
    out += std::to_string(m.layer_sizes[i]);
  }
  out += ' ';
  out += activation_name(m.hidden_activation);
  out += '\n';
  for (const auto& layer : m.layers) {
    for (std::size_t j = 0; j < layer.weights.rows(); ++j) {
      for (double w : layer.weights.row(j)) out += csv::format_exact(w) + ' ';
      out += csv::format_exact(layer.bias[j]) + '\n';
    }
  }
  return out;
}

inline Mlp load_model(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string magic, version, arch, act;
  if (!(in >> magic >> version >> arch >> act) || magic != "sentimentcast-mlp") {
    throw Error(ErrorKind::parse, "not a model file");
  }
  if (version != "v1") throw Error(ErrorKind::parse, "unsupported model version '" + version + "'");

  std::vector<std::size_t> sizes;
  std::size_t start = 0;
  while (start <= arch.size()) {
    const auto dash = arch.find('-', start);
    const auto part = arch.substr(start, dash == std::string::npos ? std::string::npos : dash - start);
    const auto n = csv::parse_integer(part);
    if (!n || *n < 1) throw Error(ErrorKind::parse, "bad architecture '" + arch + "'");
    sizes.push_back(static_cast<std::size_t>(*n));
    if (dash == std::string::npos) break;
    start = dash + 1;
  }
  Mlp m = zero_network(sizes, parse_activation(act));

  std::string token;
  auto next_number = [&]() {
    if (!(in >> token)) throw Error(ErrorKind::parse, "model file truncated");
    const auto v = csv::parse_double(token);
    if (!v) throw Error(ErrorKind::parse, "bad number '" + token + "' in model file");
    return *v;
  };
  for (auto& layer : m.layers) {
    for (std::size_t j = 0; j < layer.weights.rows(); ++j) {
      for (double& w : layer.weights.row(j)) w = next_number();
      layer.bias[j] = next_number();
    }
  }
  if (in >> token) throw Error(ErrorKind::parse, "trailing data in model file");
  return m;
}

}  // namespace sentimentcast
