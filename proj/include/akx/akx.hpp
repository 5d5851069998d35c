#pragma once

#include "akx/circle.hpp"
#include "akx/clique.hpp"
#include "akx/closed_form.hpp"
#include "akx/errors.hpp"
#include "akx/family_io.hpp"
#include "akx/generating.hpp"
#include "akx/hamming.hpp"
#include "akx/lifting.hpp"
#include "akx/oracle.hpp"
#include "akx/rational.hpp"
#include "akx/set_family.hpp"
#include "akx/shifting.hpp"
#include "akx/stable_set.hpp"
#include "akx/subset.hpp"
#include "akx/symmetrization.hpp"
#include "akx/table.hpp"
#include "akx/verify.hpp"
