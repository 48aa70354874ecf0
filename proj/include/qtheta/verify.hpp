#pragma once
namespace qtheta {}
