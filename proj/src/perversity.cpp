#include "stratsig/perversity.hpp"

namespace stratsig {

Perversity::Perversity(std::string name, std::vector<int> vals_from_2)
    : name_(std::move(name)), vals_(std::move(vals_from_2))
{
    if (!vals_.empty()) {
        if (vals_[0] != 0)
            throw std::runtime_error("perversity must start with p_2 = 0");
        for (size_t i = 1; i < vals_.size(); ++i) {
            int step = vals_[i] - vals_[i - 1];
            if (step != 0 && step != 1)
                throw std::runtime_error("perversity steps must be 0 or 1");
        }
    }
}

int Perversity::operator()(int codim) const
{
    if (codim < 2)
        return 0;
    if (codim - 2 >= (int)vals_.size())
        throw std::runtime_error("perversity " + name_ + " queried past codimension " +
                                 std::to_string(max_codim()));
    return vals_[codim - 2];
}

bool Perversity::operator<=(const Perversity& q) const
{
    size_t n = std::max(vals_.size(), q.vals_.size());
    for (size_t i = 0; i < n; ++i) {
        int a = (i < vals_.size()) ? vals_[i] : (vals_.empty() ? 0 : vals_.back());
        int b = (i < q.vals_.size()) ? q.vals_[i] : (q.vals_.empty() ? 0 : q.vals_.back());
        if (a > b)
            return false;
    }
    return true;
}

Perversity Perversity::zero(int n)
{
    return Perversity("0", std::vector<int>(std::max(n - 1, 0), 0));
}

Perversity Perversity::top(int n)
{
    std::vector<int> v;
    for (int k = 2; k <= n; ++k)
        v.push_back(k - 2);
    return Perversity("t", v);
}

Perversity Perversity::lower_middle(int n)
{
    std::vector<int> v;
    for (int k = 2; k <= n; ++k)
        v.push_back((k - 2) / 2);
    return Perversity("m", v);
}

Perversity Perversity::upper_middle(int n)
{
    std::vector<int> v;
    for (int k = 2; k <= n; ++k)
        v.push_back((k - 1) / 2);
    return Perversity("n", v);
}

MiddlePerversities middle_perversities(int n)
{
    if (n < 2)
        throw std::runtime_error("middle perversities need n >= 2");
    return {Perversity::lower_middle(n), Perversity::upper_middle(n)};
}

Perversity interpolated_perversity(int r, int n)
{
    if (r % 2 == 0 || r < 1 || r > n)
        throw InvalidSeam("interpolation seam must be odd and within 1..n, got " +
                          std::to_string(r));
    std::vector<int> v;
    for (int k = 2; k <= n; ++k)
        v.push_back(k <= r ? (k - 2) / 2 : (k - 1) / 2);
    return Perversity("P" + std::to_string(r), v);
}

} // namespace stratsig
