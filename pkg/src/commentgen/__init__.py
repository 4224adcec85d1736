"""Toolkit for generating and evaluating explanatory comments on C/C++ code.

The pipeline stages map onto the submodules:

* ``corpus``    - mine repositories into code-comment pairs
* ``astx``      - recover build flags, dump and condense compiler ASTs
* ``docstore``  - classify, chunk, and index design documents for retrieval
* ``promptgen`` - assemble few-shot prompts under a token budget
* ``llmclient`` - provider-neutral chat client with caching and a mock
* ``evalkit``   - similarity metrics, completeness ratio, chi-square test
* ``classify``  - label comments with the eight usefulness categories
* ``report``    - run the model x context experiment matrix and render tables
"""

__version__ = "0.1.0"
