import glob
import os

from pybind11.setup_helpers import ParallelCompile, Pybind11Extension, build_ext

ParallelCompile("WALKERLIE_BUILD_JOBS", default=8).install()
from setuptools import setup

sources = sorted(glob.glob("src/*.cpp")) + ["bindings/module.cpp"]
include_dirs = ["include"]
# Single-header dependencies live in ./vendor when present (the JSON
# library also resolves from the system include path).
for candidate in ("vendor", "/opt/vendor"):
    if os.path.isdir(candidate):
        include_dirs.append(candidate)
        break

setup(
    ext_modules=[
        Pybind11Extension(
            "walkerlie._core",
            sources,
            include_dirs=include_dirs,
            cxx_std=20,
        )
    ],
    cmdclass={"build_ext": build_ext},
)
