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

#include "strengthnet/model/conv.hpp"

#include "strengthnet/common/error.hpp"

namespace strengthnet::model {

Mat im2col(const Mat& x, const ConvGeometry& g) {
  if (x.rows() != g.t_in || x.cols() != static_cast<long>(g.f_in) * g.c_in) {
    throw InvalidInput("im2col: input shape mismatch");
  }
  const int t_out = g.t_out();
  const int f_out = g.f_out();
  const int pt = g.pad_t_begin();
  const int pf = g.pad_f_begin();
  Mat patches = Mat::Zero(static_cast<long>(t_out) * f_out,
                          static_cast<long>(g.kernel_t) * g.kernel_f * g.c_in);

  for (int t = 0; t < t_out; ++t) {
    for (int f = 0; f < f_out; ++f) {
      const long row = static_cast<long>(t) * f_out + f;
      for (int dt = 0; dt < g.kernel_t; ++dt) {
        const int src_t = t * g.stride_t - pt + dt;
        if (src_t < 0 || src_t >= g.t_in) continue;
        for (int df = 0; df < g.kernel_f; ++df) {
          const int src_f = f * g.stride_f - pf + df;
          if (src_f < 0 || src_f >= g.f_in) continue;
          patches.block(row, (static_cast<long>(dt) * g.kernel_f + df) * g.c_in, 1, g.c_in) =
              x.block(src_t, static_cast<long>(src_f) * g.c_in, 1, g.c_in);
        }
      }
    }
  }
  return patches;
}

Mat conv_forward(const Mat& x, const ConvLayerParams& p, const ConvGeometry& g,
                 const Eigen::ArrayXd& mask) {
  const int t_out = g.t_out();
  const int f_out = g.f_out();
  if (mask.size() != t_out) throw InvalidInput("conv_forward: mask length mismatch");

  const Mat patches = im2col(x, g);
  Mat flat = patches * p.kernel;  // (t_out*f_out) x c_out
  flat.rowwise() += p.bias.col(0).transpose();
  flat = flat.cwiseMax(0.0);

  Mat y(t_out, static_cast<long>(f_out) * g.c_out);
  for (int t = 0; t < t_out; ++t) {
    if (mask(t) == 0.0) {
      y.row(t).setZero();
      continue;
    }
    for (int f = 0; f < f_out; ++f) {
      y.block(t, static_cast<long>(f) * g.c_out, 1, g.c_out) =
          flat.row(static_cast<long>(t) * f_out + f);
    }
  }
  return y;
}

Mat conv_backward(const Mat& x, const Mat& y, const Mat& dy, const ConvLayerParams& p,
                  const ConvGeometry& g, ConvLayerParams* grad) {
  const int t_out = g.t_out();
  const int f_out = g.f_out();
  const int pt = g.pad_t_begin();
  const int pf = g.pad_f_begin();

  // Gate by the forward output: y > 0 exactly where the unit was active and
  // unmasked, so one test covers both ReLU and the padding mask.
  Mat dflat(static_cast<long>(t_out) * f_out, g.c_out);
  for (int t = 0; t < t_out; ++t) {
    for (int f = 0; f < f_out; ++f) {
      const long row = static_cast<long>(t) * f_out + f;
      for (int c = 0; c < g.c_out; ++c) {
        const long col = static_cast<long>(f) * g.c_out + c;
        dflat(row, c) = y(t, col) > 0.0 ? dy(t, col) : 0.0;
      }
    }
  }

  const Mat patches = im2col(x, g);
  grad->kernel.noalias() += patches.transpose() * dflat;
  grad->bias.col(0).noalias() += dflat.colwise().sum().transpose();

  // scatter d(patches) back to input positions (col2im)
  const Mat dpatches = dflat * p.kernel.transpose();
  Mat dx = Mat::Zero(x.rows(), x.cols());
  for (int t = 0; t < t_out; ++t) {
    for (int f = 0; f < f_out; ++f) {
      const long row = static_cast<long>(t) * f_out + f;
      for (int dt = 0; dt < g.kernel_t; ++dt) {
        const int src_t = t * g.stride_t - pt + dt;
        if (src_t < 0 || src_t >= g.t_in) continue;
        for (int df = 0; df < g.kernel_f; ++df) {
          const int src_f = f * g.stride_f - pf + df;
          if (src_f < 0 || src_f >= g.f_in) continue;
          dx.block(src_t, static_cast<long>(src_f) * g.c_in, 1, g.c_in) +=
              dpatches.block(row, (static_cast<long>(dt) * g.kernel_f + df) * g.c_in, 1,
                             g.c_in);
        }
      }
    }
  }
  return dx;
}

}  // namespace strengthnet::model
