"""Modules package containing business domains."""