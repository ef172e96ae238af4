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

#ifndef STRENGTHNET_TRAIN_EARLY_STOPPING_HPP_
#define STRENGTHNET_TRAIN_EARLY_STOPPING_HPP_

#include <limits>

namespace strengthnet::train {

// Tracks the best validation metric (lower is better) and signals a stop
// after `patience` epochs without strict improvement.
class EarlyStopper {
 public:
  explicit EarlyStopper(int patience) : patience_(patience) {}

  // Returns true if this epoch's value is a new best.
  bool observe(int epoch, double value) {
    if (value < best_value_) {
      best_value_ = value;
      best_epoch_ = epoch;
      return true;
    }
    return false;
  }

  bool should_stop(int epoch) const { return epoch - best_epoch_ >= patience_; }

  int best_epoch() const { return best_epoch_; }
  double best_value() const { return best_value_; }

 private:
  int patience_;
  int best_epoch_ = 0;
  double best_value_ = std::numeric_limits<double>::infinity();
};

}  // namespace strengthnet::train

#endif  // STRENGTHNET_TRAIN_EARLY_STOPPING_HPP_
