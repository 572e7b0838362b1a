#pragma once

#include <utility>

#include "itsec/error.hpp"
#include "itsec/num.hpp"

namespace testutil {

/// True iff f() throws itsec::Error with exactly the wanted code.
template <class F>
bool fails_with(itsec::Errc want, F&& f) {
    try {
        std::forward<F>(f)();
    } catch (const itsec::Error& e) {
        return e.code() == want;
    } catch (...) {
        return false;
    }
    return false;
}

inline itsec::Num rq(long num, long den = 1) {
    return itsec::Num::rational(itsec::rat(num, den));
}

} // namespace testutil
