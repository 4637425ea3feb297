#ifndef RCLA_RCLA_HPP
#define RCLA_RCLA_HPP

#include "rcla/backtest.hpp"
#include "rcla/deterministic.hpp"
#include "rcla/error.hpp"
#include "rcla/market_data.hpp"
#include "rcla/market_params.hpp"
#include "rcla/monte_carlo.hpp"
#include "rcla/mortality.hpp"
#include "rcla/pde.hpp"
#include "rcla/pricing_types.hpp"
#include "rcla/rng.hpp"
#include "rcla/swp_index.hpp"
#include "rcla/table2.hpp"
#include "rcla/year_month.hpp"

#endif // RCLA_RCLA_HPP
