// Umbrella header.
#ifndef XCB_XCB_HPP
#define XCB_XCB_HPP

#include "xcb/core.hpp"
#include "xcb/fingroup.hpp"
#include "xcb/xcomplex.hpp"
#include "xcb/homotopy.hpp"
#include "xcb/pushout.hpp"
#include "xcb/butterfly.hpp"
#include "xcb/document.hpp"
#include "xcb/cli.hpp"

#endif
