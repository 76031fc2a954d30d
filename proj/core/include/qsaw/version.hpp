#pragma once

#define QSAW_VERSION_MAJOR 1
#define QSAW_VERSION_MINOR 0
#define QSAW_VERSION_PATCH 0
#define QSAW_VERSION_STRING "1.0.0"
