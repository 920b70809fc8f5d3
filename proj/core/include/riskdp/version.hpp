#pragma once

#define RISKDP_VERSION "0.1.0"
