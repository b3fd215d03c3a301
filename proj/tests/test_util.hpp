#pragma once

#include <gtest/gtest.h>

#include "powmean/errors.hpp"

namespace testutil {

template <class Fn>
void expect_kind(powmean::ErrorKind kind, Fn&& fn) {
    try {
        fn();
        ADD_FAILURE() << "expected " << powmean::to_string(kind);
    } catch (const powmean::Error& e) {
        EXPECT_EQ(e.kind(), kind) << e.what();
    }
}

}  // namespace testutil
