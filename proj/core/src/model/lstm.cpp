// Copyright 2026 The strengthnet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "strengthnet/model/lstm.hpp"

#include <cmath>

#include "strengthnet/common/error.hpp"

namespace strengthnet::model {

namespace {

using RowVec = Eigen::RowVectorXd;

RowVec sigmoid(const RowVec& v) {
  return v.unaryExpr([](double x) { return 1.0 / (1.0 + std::exp(-x)); });
}

}  // namespace

Mat lstm_forward(const Mat& x, const LstmDirParams& p, const Eigen::ArrayXd& mask,
                 bool reversed, LstmCache* cache) {
  const long T = x.rows();
  const long H = p.w_recurrent.rows();
  if (x.cols() != p.w_input.rows()) throw InvalidInput("lstm_forward: input width mismatch");
  if (mask.size() != T) throw InvalidInput("lstm_forward: mask length mismatch");

  if (cache != nullptr) {
    cache->inputs = x;
    cache->gates.resize(T, 4 * H);
    cache->cell.resize(T, H);
    cache->cell_tanh.resize(T, H);
    cache->hidden.resize(T, H);
    cache->mask = mask;
    cache->reversed = reversed;
  }

  Mat out = Mat::Zero(T, H);
  RowVec h_prev = RowVec::Zero(H);
  RowVec c_prev = RowVec::Zero(H);

  for (long k = 0; k < T; ++k) {
    const long t = reversed ? T - 1 - k : k;
    RowVec pre = x.row(t) * p.w_input + h_prev * p.w_recurrent + p.bias.col(0).transpose();
    const RowVec gate_i = sigmoid(pre.segment(0, H));
    const RowVec gate_f = sigmoid(pre.segment(H, H));
    const RowVec gate_g = pre.segment(2 * H, H).array().tanh();
    const RowVec gate_o = sigmoid(pre.segment(3 * H, H));

    const RowVec c_raw = gate_f.cwiseProduct(c_prev) + gate_i.cwiseProduct(gate_g);
    const RowVec c_tanh = c_raw.array().tanh();
    const RowVec h_raw = gate_o.cwiseProduct(c_tanh);

    const double m = mask(t);
    const RowVec c_t = m * c_raw + (1.0 - m) * c_prev;
    const RowVec h_t = m * h_raw + (1.0 - m) * h_prev;
    out.row(t) = m * h_raw;

    if (cache != nullptr) {
      cache->gates.row(t) << gate_i, gate_f, gate_g, gate_o;
      cache->cell.row(t) = c_t;
      cache->cell_tanh.row(t) = c_tanh;
      cache->hidden.row(t) = h_t;
    }
    c_prev = c_t;
    h_prev = h_t;
  }
  return out;
}

Mat lstm_backward(const Mat& d_out, const LstmDirParams& p, const LstmCache& cache,
                  LstmDirParams* grad) {
  const long T = cache.inputs.rows();
  const long H = p.w_recurrent.rows();
  Mat dx = Mat::Zero(T, cache.inputs.cols());
  RowVec dh_state = RowVec::Zero(H);
  RowVec dc_state = RowVec::Zero(H);

  for (long k = T - 1; k >= 0; --k) {
    const long t = cache.reversed ? T - 1 - k : k;
    const long t_prev = cache.reversed ? T - k : k - 1;  // index of processing step k-1
    const bool has_prev = k > 0;
    const RowVec h_prev = has_prev ? RowVec(cache.hidden.row(t_prev)) : RowVec::Zero(H);
    const RowVec c_prev = has_prev ? RowVec(cache.cell.row(t_prev)) : RowVec::Zero(H);

    const double m = cache.mask(t);
    const RowVec gate_i = cache.gates.row(t).segment(0, H);
    const RowVec gate_f = cache.gates.row(t).segment(H, H);
    const RowVec gate_g = cache.gates.row(t).segment(2 * H, H);
    const RowVec gate_o = cache.gates.row(t).segment(3 * H, H);
    const RowVec c_tanh = cache.cell_tanh.row(t);

    // out_t = m * h_raw; h_t = m * h_raw + (1-m) * h_prev
    const RowVec dh_raw = m * (d_out.row(t) + dh_state);
    RowVec dh_prev_carry = (1.0 - m) * dh_state;
    RowVec dc_prev_carry = (1.0 - m) * dc_state;

    // h_raw = o * tanh(c_raw); c_t = m * c_raw + (1-m) * c_prev
    const RowVec d_o = dh_raw.cwiseProduct(c_tanh);
    const RowVec dc_raw =
        m * dc_state +
        dh_raw.cwiseProduct(gate_o).cwiseProduct(RowVec::Ones(H) - c_tanh.cwiseProduct(c_tanh));

    // c_raw = f * c_prev + i * g
    const RowVec d_f = dc_raw.cwiseProduct(c_prev);
    const RowVec d_i = dc_raw.cwiseProduct(gate_g);
    const RowVec d_g = dc_raw.cwiseProduct(gate_i);
    dc_prev_carry += dc_raw.cwiseProduct(gate_f);

    RowVec dpre(4 * H);
    dpre.segment(0, H) = d_i.cwiseProduct(gate_i).cwiseProduct(RowVec::Ones(H) - gate_i);
    dpre.segment(H, H) = d_f.cwiseProduct(gate_f).cwiseProduct(RowVec::Ones(H) - gate_f);
    dpre.segment(2 * H, H) =
        d_g.cwiseProduct(RowVec::Ones(H) - gate_g.cwiseProduct(gate_g));
    dpre.segment(3 * H, H) = d_o.cwiseProduct(gate_o).cwiseProduct(RowVec::Ones(H) - gate_o);

    grad->w_input.noalias() += cache.inputs.row(t).transpose() * dpre;
    grad->w_recurrent.noalias() += h_prev.transpose() * dpre;
    grad->bias.col(0).noalias() += dpre.transpose();

    dx.row(t) = dpre * p.w_input.transpose();
    dh_prev_carry += dpre * p.w_recurrent.transpose();

    dh_state = dh_prev_carry;
    dc_state = dc_prev_carry;
  }
  return dx;
}

Mat bilstm_forward(const Mat& x, const BiLstmParams& p, const Eigen::ArrayXd& mask,
                   BiLstmCache* cache) {
  const Mat fwd = lstm_forward(x, p.forward, mask, /*reversed=*/false,
                               cache != nullptr ? &cache->fwd : nullptr);
  const Mat bwd = lstm_forward(x, p.backward, mask, /*reversed=*/true,
                               cache != nullptr ? &cache->bwd : nullptr);
  Mat out(x.rows(), fwd.cols() + bwd.cols());
  out << fwd, bwd;
  return out;
}

Mat bilstm_backward(const Mat& d_out, const BiLstmParams& p, const BiLstmCache& cache,
                    BiLstmParams* grad) {
  const long H = p.forward.w_recurrent.rows();
  const Mat dx_fwd =
      lstm_backward(d_out.leftCols(H), p.forward, cache.fwd, &grad->forward);
  const Mat dx_bwd =
      lstm_backward(d_out.rightCols(H), p.backward, cache.bwd, &grad->backward);
  return dx_fwd + dx_bwd;
}

}  // namespace strengthnet::model
