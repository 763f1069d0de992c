#ifndef GPW_GPW_HPP
#define GPW_GPW_HPP

#include "gpw/basegroups.hpp"
#include "gpw/bigint.hpp"
#include "gpw/errors.hpp"
#include "gpw/graphproduct.hpp"
#include "gpw/grigorchuk.hpp"
#include "gpw/io.hpp"
#include "gpw/knapsack.hpp"
#include "gpw/oracle.hpp"
#include "gpw/powerword.hpp"
#include "gpw/preprocess.hpp"
#include "gpw/rewriting.hpp"
#include "gpw/shortening.hpp"
#include "gpw/simple_pwp.hpp"
#include "gpw/symbolic.hpp"
#include "gpw/traces.hpp"

#endif
