#pragma once

#define FREDKIN_VERSION_MAJOR 1
#define FREDKIN_VERSION_MINOR 0
#define FREDKIN_VERSION_PATCH 0
#define FREDKIN_VERSION_STRING "1.0.0"
