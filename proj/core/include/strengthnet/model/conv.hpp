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

#ifndef STRENGTHNET_MODEL_CONV_HPP_
#define STRENGTHNET_MODEL_CONV_HPP_

#include <algorithm>

#include "strengthnet/model/params.hpp"

namespace strengthnet::model {

// Activations are T x (F * C) matrices; column index = f * C + c.
//
// Same padding with ceil-division output sizes, extra padding at the end
// (so 80 -> 27 -> 9 -> 3 -> 1 under frequency stride 3 with 3x3 kernels).
struct ConvGeometry {
  int t_in = 0, f_in = 0, c_in = 0, c_out = 0;
  int kernel_t = 3, kernel_f = 3;
  int stride_t = 1, stride_f = 1;

  int t_out() const { return (t_in + stride_t - 1) / stride_t; }
  int f_out() const { return (f_in + stride_f - 1) / stride_f; }
  int pad_t_begin() const {
    const int total = std::max((t_out() - 1) * stride_t + kernel_t - t_in, 0);
    return total / 2;
  }
  int pad_f_begin() const {
    const int total = std::max((f_out() - 1) * stride_f + kernel_f - f_in, 0);
    return total / 2;
  }
};

// Patch matrix of shape (t_out * f_out) x (kernel_t * kernel_f * c_in);
// patch row index = t * f_out + f, column index = (dt * kernel_f + df) * c_in + c.
Mat im2col(const Mat& x, const ConvGeometry& g);

// y = relu(im2col(x) * kernel + bias), reshaped to t_out x (f_out * c_out).
// Rows with mask == 0 are zeroed after the activation so later layers see
// exact zeros in padding.
Mat conv_forward(const Mat& x, const ConvLayerParams& p, const ConvGeometry& g,
                 const Eigen::ArrayXd& mask);

// Backward through mask, ReLU, convolution and padding. y is the forward
// output (used as the ReLU gate: gradients flow only where y > 0).
// Returns d(loss)/d(x) and accumulates parameter gradients.
Mat conv_backward(const Mat& x, const Mat& y, const Mat& dy, const ConvLayerParams& p,
                  const ConvGeometry& g, ConvLayerParams* grad);

}  // namespace strengthnet::model

#endif  // STRENGTHNET_MODEL_CONV_HPP_
