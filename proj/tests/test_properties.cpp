// SPDX-License-Identifier: Apache-2.0

#include "properties.hpp"

#include <doctest.h>

TEST_SUITE("properties")
{
  TEST_CASE("property checks hold")
  {
    for (const props::Check &c : props::all())
    {
      INFO(c.name << ": " << c.detail);
      CHECK(c.pass);
    }
  }
}
