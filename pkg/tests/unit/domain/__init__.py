"""Domain unit tests."""