import os

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

EIGEN_INCLUDE = os.environ.get("EIGEN_INCLUDE_DIR", "/usr/include/eigen3")

ext = Pybind11Extension(
    "spinctrl._spinctrl",
    sources=[
        "bindings/py_spinctrl.cpp",
        "src/spin_core.cpp",
        "src/squeezing.cpp",
        "src/dynamics.cpp",
        "src/ga.cpp",
        "src/phase_space.cpp",
        "src/stats.cpp",
    ],
    include_dirs=["include", EIGEN_INCLUDE],
    cxx_std=20,
    extra_compile_args=["-O2"],
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
