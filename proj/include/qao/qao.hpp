#pragma once

#include "qao/polygauss.hpp"
#include "qao/model.hpp"
#include "qao/closedform.hpp"
#include "qao/optimize.hpp"
#include "qao/oracle.hpp"
#include "qao/config.hpp"
#include "qao/report.hpp"
