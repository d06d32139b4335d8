#ifndef DLPD_DLPD_HPP
#define DLPD_DLPD_HPP

#include "dlpd/classify.hpp"
#include "dlpd/conjclass.hpp"
#include "dlpd/dlcrit.hpp"
#include "dlpd/errors.hpp"
#include "dlpd/feaslin.hpp"
#include "dlpd/gfflag.hpp"
#include "dlpd/rational.hpp"
#include "dlpd/report.hpp"
#include "dlpd/rootsys.hpp"
#include "dlpd/weyl.hpp"

#endif // DLPD_DLPD_HPP
