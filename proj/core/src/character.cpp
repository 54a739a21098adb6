#include "wgkm/character.hpp"

#include <sstream>

namespace wgkm {

Character Character::basis(int rank, int i) {
    IntVec v(rank, 0);
    v[i] = 1;
    return Character(std::move(v));
}

Character Character::sign_canonical() const {
    for (Int x : c_) {
        if (x > 0) return *this;
        if (x < 0) return -*this;
    }
    return *this;
}

bool Character::parallel_up_to_sign(const Character& o) const {
    return c_ == o.c_ || c_ == vec_neg(o.c_);
}

std::string Character::to_string() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ",";
        os << c_[i];
    }
    os << ")";
    return os.str();
}

Rat pairing(const Character& chi, const Cocharacter& v) {
    require(chi.rank() == static_cast<int>(v.size()), ErrorKind::Computation,
            "pairing dimension mismatch");
    Rat s(0);
    for (int i = 0; i < chi.rank(); ++i)
        if (chi[i] != 0) s += Rat(static_cast<long>(chi[i])) * v[i];
    return s;
}

} // namespace wgkm
