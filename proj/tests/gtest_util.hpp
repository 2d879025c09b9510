#pragma once

#include <gtest/gtest.h>

#include <string>

namespace testsupport {

/// Assert that fn throws E and that the message mentions `needle`.
template <typename E, typename Fn>
void expect_throw_containing(Fn&& fn, const std::string& needle) {
    bool threw = false;
    try {
        fn();
    } catch (const E& e) {
        threw = true;
        EXPECT_NE(std::string(e.what()).find(needle), std::string::npos)
            << "unexpected message: " << e.what();
    }
    EXPECT_TRUE(threw) << "expected exception with message containing \"" << needle << "\"";
}

}  // namespace testsupport
