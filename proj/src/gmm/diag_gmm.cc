// mvfe/gmm/diag_gmm.cc

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "mvfe/gmm/diag_gmm.h"

#include <cmath>
#include <fstream>
#include <limits>

#include "mvfe/simd/kernels.h"
#include "mvfe/util/atomic_file.h"
#include "mvfe/util/io.h"

namespace mvfe {

DiagGmm::DiagGmm(int32 num_comps, int32 dim)
    : num_comps_(num_comps), dim_(dim),
      weights_(num_comps, 1.0 / num_comps),
      means_(static_cast<size_t>(num_comps) * dim, 0.0),
      vars_(static_cast<size_t>(num_comps) * dim, 1.0) {
  if (num_comps < 1 || dim < 1)
    throw ConfigError("DiagGmm: need num_comps >= 1 and dim >= 1");
  ComputeDerived();
}

void DiagGmm::Validate() const {
  double sum = 0.0;
  for (int32 m = 0; m < num_comps_; m++) {
    if (weights_[m] < 0.0)
      throw ConfigError("DiagGmm: negative weight at component " +
                        std::to_string(m));
    sum += weights_[m];
  }
  if (std::abs(sum - 1.0) > 1e-10)
    throw ConfigError("DiagGmm: weights sum to " + std::to_string(sum));
  for (size_t i = 0; i < vars_.size(); i++)
    if (!(vars_[i] > 0.0) || !std::isfinite(vars_[i]))
      throw ConfigError("DiagGmm: non-positive variance");
  for (double v : means_)
    if (!std::isfinite(v)) throw ConfigError("DiagGmm: non-finite mean");
}

void DiagGmm::ComputeDerived() {
  inv_vars_.resize(vars_.size());
  gconsts_.resize(num_comps_);
  const double kLog2Pi = std::log(2.0 * M_PI);
  for (int32 m = 0; m < num_comps_; m++) {
    double logdet = 0.0;
    for (int32 i = 0; i < dim_; i++) {
      double v = vars_[static_cast<size_t>(m) * dim_ + i];
      inv_vars_[static_cast<size_t>(m) * dim_ + i] = 1.0 / v;
      logdet += std::log(v);
    }
    double logw = weights_[m] > 0.0 ? std::log(weights_[m])
                                    : -std::numeric_limits<double>::infinity();
    gconsts_[m] = logw - 0.5 * (dim_ * kLog2Pi + logdet);
  }
}

static double LogSumExp(const double *v, int32 n) {
  double mx = v[0];
  for (int32 i = 1; i < n; i++) mx = std::max(mx, v[i]);
  if (!std::isfinite(mx)) return mx;
  double sum = 0.0;
  for (int32 i = 0; i < n; i++) sum += std::exp(v[i] - mx);
  return mx + std::log(sum);
}

double DiagGmm::LogLikelihood(const double *frame, int32 dim) const {
  if (dim != dim_)
    throw InputError("DiagGmm: frame dim " + std::to_string(dim) +
                     " vs model dim " + std::to_string(dim_));
  std::vector<double> ll(num_comps_);
  for (int32 m = 0; m < num_comps_; m++)
    ll[m] = gconsts_[m] -
            0.5 * simd::QuadDiag(frame, Mean(m),
                                 inv_vars_.data() +
                                     static_cast<size_t>(m) * dim_,
                                 dim_);
  return LogSumExp(ll.data(), num_comps_);
}

double DiagGmm::Posteriors(const double *frame, int32 dim,
                           double *gamma) const {
  if (dim != dim_)
    throw InputError("DiagGmm: frame dim " + std::to_string(dim) +
                     " vs model dim " + std::to_string(dim_));
  std::vector<double> ll(num_comps_);
  for (int32 m = 0; m < num_comps_; m++)
    ll[m] = gconsts_[m] -
            0.5 * simd::QuadDiag(frame, Mean(m),
                                 inv_vars_.data() +
                                     static_cast<size_t>(m) * dim_,
                                 dim_);
  double total = LogSumExp(ll.data(), num_comps_);
  for (int32 m = 0; m < num_comps_; m++) gamma[m] = std::exp(ll[m] - total);
  return total;
}

void DiagGmm::Write(const std::string &path) const {
  AtomicOutputFile file(path);
  std::ostream &os = file.Stream();
  os.write("MVG1", 4);
  WriteU32(os, static_cast<uint32>(num_comps_));
  WriteU32(os, static_cast<uint32>(dim_));
  for (double w : weights_) WriteF64(os, w);
  for (double m : means_) WriteF64(os, m);
  for (double v : vars_) WriteF64(os, v);
  file.Commit();
}

DiagGmm DiagGmm::Read(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InputError("cannot open " + path);
  ExpectMagic(is, "MVG1", path);
  uint32 m = ReadU32(is, path + ": num_comps");
  uint32 d = ReadU32(is, path + ": dim");
  if (m < 1 || d < 1 || m > (1u << 24) || d > (1u << 20))
    throw InputError(path + ": implausible header " + std::to_string(m) +
                     "x" + std::to_string(d));
  DiagGmm gmm(static_cast<int32>(m), static_cast<int32>(d));
  for (uint32 i = 0; i < m; i++)
    gmm.weights_[i] = ReadF64(is, path + ": weights");
  for (size_t i = 0; i < gmm.means_.size(); i++)
    gmm.means_[i] = ReadF64(is, path + ": means");
  for (size_t i = 0; i < gmm.vars_.size(); i++)
    gmm.vars_[i] = ReadF64(is, path + ": variances");
  gmm.Validate();
  gmm.ComputeDerived();
  return gmm;
}

}  // namespace mvfe
