"""Application layer unit tests."""