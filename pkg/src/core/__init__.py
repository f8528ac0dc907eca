# 공통 도메인 타입 모듈
