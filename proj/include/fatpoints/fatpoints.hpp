#pragma once

#include "fatpoints/core.hpp"
#include "fatpoints/reduction.hpp"
#include "fatpoints/speciality.hpp"
#include "fatpoints/containment.hpp"
#include "fatpoints/oracle.hpp"
#include "fatpoints/search.hpp"
