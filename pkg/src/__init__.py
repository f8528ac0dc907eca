# RIS 섀시 캐비티 CIR 성형 시뮬레이터
# 메인 소스 코드 패키지
