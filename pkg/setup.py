from setuptools import find_packages, setup

setup(
    name="triadic_process",
    version="0.1",
    author="triadic-process authors",
    python_requires=">=3.8",
    packages=find_packages(exclude=["tests", "tests.*"]),
    scripts=[],
    entry_points="""
      [console_scripts]
      triadic-process=triadic_process:triadic_cmd
      """,
    install_requires=[
        "click",
        "click_log",
        "metricq>=3.0",
        "networkx",
        "numpy",
    ],
    extras_require={"tests": ["hypothesis", "pytest"]},
)
