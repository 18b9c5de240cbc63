// Perversity sequences in the Goresky-MacPherson convention and the
// interpolation family P_r between the two middle perversities.

#ifndef STRATSIG_PERVERSITY_HPP
#define STRATSIG_PERVERSITY_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace stratsig {

class InvalidSeam : public std::runtime_error {
public:
    explicit InvalidSeam(const std::string& m) : std::runtime_error(m) {}
};

// values[k] for codimension k in 2..n ; p_2 = 0 and steps are 0 or 1
class Perversity {
public:
    Perversity() = default;
    Perversity(std::string name, std::vector<int> vals_from_2);

    int operator()(int codim) const;
    int max_codim() const { return (int)vals_.size() + 1; }
    const std::string& name() const { return name_; }

    bool operator<=(const Perversity& q) const; // pointwise, over shared range
    bool operator==(const Perversity& q) const { return vals_ == q.vals_; }

    static Perversity zero(int n);
    static Perversity top(int n);
    static Perversity lower_middle(int n); // m(k) = floor((k-2)/2)
    static Perversity upper_middle(int n); // n(k) = floor((k-1)/2)

private:
    std::string name_;
    std::vector<int> vals_; // index 0 <-> codim 2
};

struct MiddlePerversities {
    Perversity m; // lower
    Perversity n; // upper
};
MiddlePerversities middle_perversities(int n);

// P_r(i) = m(i) for i <= r, n(i) for i > r; r odd, 1 <= r <= n.
Perversity interpolated_perversity(int r, int n);

} // namespace stratsig

#endif
