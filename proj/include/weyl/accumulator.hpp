#pragma once

#include <complex>

namespace weyl {

// Kahan-compensated accumulator for complex terms. The exponential sums here
// add up to ~1e7 unit vectors whose total nearly cancels, so the running
// error must stay at machine-epsilon level independent of the term count.
//
// Single-owner: parallel summation uses one accumulator per block and merges
// the block values in a fixed order.
class ComplexAccumulator {
 public:
  void add(double re, double im) {
    double y = re - cre_;
    double t = re_ + y;
    cre_ = (t - re_) - y;
    re_ = t;
    y = im - cim_;
    t = im_ + y;
    cim_ = (t - im_) - y;
    im_ = t;
  }

  void add(std::complex<double> z) { add(z.real(), z.imag()); }

  // Folds another accumulator in, including its pending compensation.
  void merge(const ComplexAccumulator& other) {
    add(other.re_, other.im_);
    add(-other.cre_, -other.cim_);
  }

  std::complex<double> value() const { return {re_ - cre_, im_ - cim_}; }

 private:
  double re_ = 0.0, im_ = 0.0;
  double cre_ = 0.0, cim_ = 0.0;
};

}  // namespace weyl
