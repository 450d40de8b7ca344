#ifndef BSPEC_KAHAN_HPP
#define BSPEC_KAHAN_HPP

namespace bspec {

// Compensated accumulator; T may be real or std::complex.
template <class T>
class Kahan {
public:
    void add(const T& x) {
        T y = x - c_;
        T t = sum_ + y;
        c_ = (t - sum_) - y;
        sum_ = t;
    }
    const T& value() const { return sum_; }

private:
    T sum_{};
    T c_{};
};

} // namespace bspec

#endif
