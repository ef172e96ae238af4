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

#ifndef STRENGTHNET_MODEL_LSTM_HPP_
#define STRENGTHNET_MODEL_LSTM_HPP_

#include "strengthnet/model/params.hpp"

namespace strengthnet::model {

// One direction of an LSTM over a T x D sequence with a 0/1 validity mask.
// Masked steps copy hidden and cell state through unchanged and emit zero
// output rows, so padded batches reproduce the unpadded computation.
struct LstmCache {
  Mat inputs;       // T x D
  Mat gates;        // T x 4H, post-nonlinearity [i, f, g, o]
  Mat cell;         // T x H, post-mask state c_t
  Mat cell_tanh;    // T x H, tanh of the raw cell at each step
  Mat hidden;       // T x H, post-mask state h_t
  Eigen::ArrayXd mask;
  bool reversed = false;
};

// Runs the direction over rows 0..T-1 (or T-1..0 when reversed). Returns
// the T x H output rows (zero where masked); fills cache when non-null.
Mat lstm_forward(const Mat& x, const LstmDirParams& p, const Eigen::ArrayXd& mask,
                 bool reversed, LstmCache* cache);

// Backpropagates d(loss)/d(output rows), accumulating parameter gradients
// into grad and returning d(loss)/d(x).
Mat lstm_backward(const Mat& d_out, const LstmDirParams& p, const LstmCache& cache,
                  LstmDirParams* grad);

// Bidirectional wrapper: concatenates forward and backward outputs to
// T x 2H.
struct BiLstmCache {
  LstmCache fwd;
  LstmCache bwd;
};
Mat bilstm_forward(const Mat& x, const BiLstmParams& p, const Eigen::ArrayXd& mask,
                   BiLstmCache* cache);
Mat bilstm_backward(const Mat& d_out, const BiLstmParams& p, const BiLstmCache& cache,
                    BiLstmParams* grad);

}  // namespace strengthnet::model

#endif  // STRENGTHNET_MODEL_LSTM_HPP_
