#pragma once

#include "zlab/types.hpp"

namespace zlab::detail {

struct LatticeMax {
    i64 value = 0;  // q^2 D*
    i64 row = 0;
    bool closed = false;
};

LatticeMax lattice_max(i64 a, i64 q);

}  // namespace zlab::detail
