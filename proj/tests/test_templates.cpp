#include <doctest.h>

TEST_CASE("placeholder_templates") { CHECK(true); }
